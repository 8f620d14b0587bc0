#pragma once

#include <cmath>
#include <stdexcept>

namespace cdg {

struct SingularGamma : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// LDL^T factorization of a small symmetric positive definite matrix.
// No pivoting; positive definiteness of the input is the caller's contract.
template <int N>
struct SpdSolver {
    double L[N][N]; // strictly lower part holds the unit-triangular factor
    double d[N];

    void factor(const double A[N][N]) {
        for (int j = 0; j < N; ++j) {
            double dj = A[j][j];
            for (int k = 0; k < j; ++k) dj -= L[j][k] * L[j][k] * d[k];
            if (!(dj > 0.0) || !std::isfinite(dj)) {
                throw SingularGamma("moment matrix not positive definite");
            }
            d[j] = dj;
            for (int i = j + 1; i < N; ++i) {
                double s = A[i][j];
                for (int k = 0; k < j; ++k) s -= L[i][k] * L[j][k] * d[k];
                L[i][j] = s / dj;
            }
        }
    }

    void solve(const double* b, double* x) const {
        for (int i = 0; i < N; ++i) {
            double s = b[i];
            for (int k = 0; k < i; ++k) s -= L[i][k] * x[k];
            x[i] = s;
        }
        for (int i = 0; i < N; ++i) x[i] /= d[i];
        for (int i = N - 1; i >= 0; --i) {
            double s = x[i];
            for (int k = i + 1; k < N; ++k) s -= L[k][i] * x[k];
            x[i] = s;
        }
    }
};

} // namespace cdg
