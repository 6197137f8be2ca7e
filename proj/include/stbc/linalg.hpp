#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace stbc {

using cplx = std::complex<double>;

struct RankDeficient : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dense complex matrix, row-major. Sizes here never exceed ~32x20.
struct CMat {
    int rows = 0;
    int cols = 0;
    std::vector<cplx> a;

    CMat() = default;
    CMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    cplx& operator()(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    const cplx& operator()(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

    static CMat identity(int n);
};

struct RMat {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    RMat() = default;
    RMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    double& operator()(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    const double& operator()(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

    static RMat identity(int n);
};

CMat operator*(const CMat& x, const CMat& y);
CMat operator+(const CMat& x, const CMat& y);
CMat operator-(const CMat& x, const CMat& y);
CMat operator*(cplx s, const CMat& x);
RMat operator*(const RMat& x, const RMat& y);
RMat operator-(const RMat& x, const RMat& y);

std::vector<double> operator*(const RMat& x, const std::vector<double>& v);

CMat adjoint(const CMat& x);
RMat transpose(const RMat& x);
double fro_norm(const CMat& x);
double fro_norm(const RMat& x);

/// Column-stacking: m (r x c) -> (r*c x 1).
CMat vec(const CMat& m);

CMat kron(const CMat& x, const CMat& y);

/// Real embedding: [Re(A); Im(A)], shape 2r x c.
RMat check(const CMat& m);

/// Determinant of a square complex matrix by partially pivoted LU.
cplx det(const CMat& m);

struct ThinQR {
    RMat q1;  // m x n, orthonormal columns
    RMat r;   // n x n, upper triangular, nonnegative diagonal
};

/// Householder thin QR. Throws RankDeficient when a pivot falls below
/// 1e-12 times the largest column norm of the input.
ThinQR thin_qr(const RMat& a);

}  // namespace stbc
