#pragma once
#include <vector>

namespace adx {

/// General banded matrix in LAPACK band storage with factorization reuse.
/// Row i, column j is addressable when |i - j| <= kl (== ku here).
class BandedMatrix {
public:
    BandedMatrix(int n, int kl, int ku);
    double& at(int i, int j);          // assemble; zero-initialized
    void factor();                     // LU with partial pivoting (dgbtrf)
    std::vector<double> solve(const std::vector<double>& rhs) const;  // dgbtrs

private:
    int n_, kl_, ku_, ldab_;
    bool factored_ = false;
    std::vector<double> ab_;
    std::vector<int> ipiv_;
};

} // namespace adx
