#include "stbc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace stbc {

CMat CMat::identity(int n) {
    CMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

RMat RMat::identity(int n) {
    RMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMat operator*(const CMat& x, const CMat& y) {
    CMat z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const cplx xv = x(i, k);
            if (xv == 0.0) continue;
            for (int j = 0; j < y.cols; ++j) z(i, j) += xv * y(k, j);
        }
    return z;
}

CMat operator+(const CMat& x, const CMat& y) {
    CMat z = x;
    for (size_t i = 0; i < z.a.size(); ++i) z.a[i] += y.a[i];
    return z;
}

CMat operator-(const CMat& x, const CMat& y) {
    CMat z = x;
    for (size_t i = 0; i < z.a.size(); ++i) z.a[i] -= y.a[i];
    return z;
}

CMat operator*(cplx s, const CMat& x) {
    CMat z = x;
    for (auto& v : z.a) v *= s;
    return z;
}

RMat operator*(const RMat& x, const RMat& y) {
    RMat z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const double xv = x(i, k);
            if (xv == 0.0) continue;
            for (int j = 0; j < y.cols; ++j) z(i, j) += xv * y(k, j);
        }
    return z;
}

RMat operator-(const RMat& x, const RMat& y) {
    RMat z = x;
    for (size_t i = 0; i < z.a.size(); ++i) z.a[i] -= y.a[i];
    return z;
}

std::vector<double> operator*(const RMat& x, const std::vector<double>& v) {
    std::vector<double> out(x.rows, 0.0);
    for (int i = 0; i < x.rows; ++i) {
        double acc = 0.0;
        for (int j = 0; j < x.cols; ++j) acc += x(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

CMat adjoint(const CMat& x) {
    CMat z(x.cols, x.rows);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) z(j, i) = std::conj(x(i, j));
    return z;
}

RMat transpose(const RMat& x) {
    RMat z(x.cols, x.rows);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) z(j, i) = x(i, j);
    return z;
}

double fro_norm(const CMat& x) {
    double s = 0.0;
    for (const auto& v : x.a) s += std::norm(v);
    return std::sqrt(s);
}

double fro_norm(const RMat& x) {
    double s = 0.0;
    for (double v : x.a) s += v * v;
    return std::sqrt(s);
}

CMat vec(const CMat& m) {
    CMat v(m.rows * m.cols, 1);
    int k = 0;
    for (int j = 0; j < m.cols; ++j)
        for (int i = 0; i < m.rows; ++i) v(k++, 0) = m(i, j);
    return v;
}

CMat kron(const CMat& x, const CMat& y) {
    CMat z(x.rows * y.rows, x.cols * y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) {
            const cplx xv = x(i, j);
            for (int p = 0; p < y.rows; ++p)
                for (int q = 0; q < y.cols; ++q)
                    z(i * y.rows + p, j * y.cols + q) = xv * y(p, q);
        }
    return z;
}

RMat check(const CMat& m) {
    RMat z(2 * m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) {
            z(i, j) = m(i, j).real();
            z(m.rows + i, j) = m(i, j).imag();
        }
    return z;
}

cplx det(const CMat& m) {
    const int n = m.rows;
    CMat lu = m;
    cplx d = 1.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(lu(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double v = std::abs(lu(i, k));
            if (v > best) { best = v; piv = i; }
        }
        if (best == 0.0) return 0.0;
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
            d = -d;
        }
        d *= lu(k, k);
        const cplx inv = 1.0 / lu(k, k);
        for (int i = k + 1; i < n; ++i) {
            const cplx f = lu(i, k) * inv;
            if (f == 0.0) continue;
            for (int j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
        }
    }
    return d;
}

ThinQR thin_qr(const RMat& a) {
    const int m = a.rows;
    const int n = a.cols;
    if (m < n) throw std::invalid_argument("thin_qr: need rows >= cols");

    double max_colnorm = 0.0;
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int i = 0; i < m; ++i) s += a(i, j) * a(i, j);
        max_colnorm = std::max(max_colnorm, std::sqrt(s));
    }
    const double tol = 1e-12 * max_colnorm;

    RMat w = a;                     // gets overwritten with R in its top triangle
    RMat q(m, m);                   // accumulated Q, applied reflector by reflector
    for (int i = 0; i < m; ++i) q(i, i) = 1.0;
    std::vector<double> v(m);

    for (int k = 0; k < n; ++k) {
        double norm = 0.0;
        for (int i = k; i < m; ++i) norm += w(i, k) * w(i, k);
        norm = std::sqrt(norm);
        if (norm <= tol) throw RankDeficient("thin_qr: rank-deficient input");

        // Householder vector; alpha chosen so the pivot comes out positive.
        const double alpha = (w(k, k) > 0.0) ? -norm : norm;
        double vnorm2 = 0.0;
        for (int i = k; i < m; ++i) {
            v[i] = w(i, k);
            if (i == k) v[i] -= alpha;
            vnorm2 += v[i] * v[i];
        }
        if (vnorm2 > 0.0) {
            const double beta = 2.0 / vnorm2;
            for (int j = k; j < n; ++j) {
                double dot = 0.0;
                for (int i = k; i < m; ++i) dot += v[i] * w(i, j);
                dot *= beta;
                for (int i = k; i < m; ++i) w(i, j) -= dot * v[i];
            }
            for (int j = 0; j < m; ++j) {
                double dot = 0.0;
                for (int i = k; i < m; ++i) dot += v[i] * q(j, i);
                dot *= beta;
                for (int i = k; i < m; ++i) q(j, i) -= dot * v[i];
            }
        }
        // alpha < 0 means the pivot landed negative; flip the row and Q column.
        if (w(k, k) < 0.0) {
            for (int j = k; j < n; ++j) w(k, j) = -w(k, j);
            for (int i = 0; i < m; ++i) q(i, k) = -q(i, k);
        }
        if (w(k, k) <= tol) throw RankDeficient("thin_qr: rank-deficient input");
    }

    ThinQR out;
    out.q1 = RMat(m, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) out.q1(i, j) = q(i, j);
    out.r = RMat(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) out.r(i, j) = w(i, j);
    return out;
}

}  // namespace stbc
