#include "adx/banded.hpp"

#include <stdexcept>

extern "C" {
void dgbtrf_(const int* m, const int* n, const int* kl, const int* ku,
             double* ab, const int* ldab, int* ipiv, int* info);
void dgbtrs_(const char* trans, const int* n, const int* kl, const int* ku,
             const int* nrhs, const double* ab, const int* ldab, const int* ipiv,
             double* b, const int* ldb, int* info);
}

namespace adx {

BandedMatrix::BandedMatrix(int n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), ldab_(2 * kl + ku + 1),
      ab_((size_t)ldab_ * n, 0.0), ipiv_(n, 0) {}

double& BandedMatrix::at(int i, int j) {
    if (i < 0 || j < 0 || i >= n_ || j >= n_ || i - j > kl_ || j - i > ku_)
        throw std::out_of_range("BandedMatrix::at outside band");
    // LAPACK band storage: AB(kl+ku+i-j, j) in 0-based indexing
    return ab_[(size_t)j * ldab_ + (kl_ + ku_ + i - j)];
}

void BandedMatrix::factor() {
    int info = 0;
    dgbtrf_(&n_, &n_, &kl_, &ku_, ab_.data(), &ldab_, ipiv_.data(), &info);
    if (info != 0) throw std::runtime_error("banded LU failed, info=" + std::to_string(info));
    factored_ = true;
}

std::vector<double> BandedMatrix::solve(const std::vector<double>& rhs) const {
    if (!factored_) throw std::logic_error("BandedMatrix::solve before factor()");
    if ((int)rhs.size() != n_) throw std::invalid_argument("rhs size mismatch");
    std::vector<double> b = rhs;
    int info = 0, nrhs = 1;
    char trans = 'N';
    dgbtrs_(&trans, &n_, &kl_, &ku_, &nrhs, ab_.data(), &ldab_, ipiv_.data(),
            b.data(), &n_, &info);
    if (info != 0) throw std::runtime_error("banded solve failed");
    return b;
}

} // namespace adx
