#include "scatter/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace scatter {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::transposed() const
{
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Matrix multiply(const Matrix& a, const Matrix& b)
{
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

double inf_norm(const Matrix& a)
{
    double best = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        double sum = 0.0;
        for (double v : a.row(r)) sum += std::abs(v);
        best = std::max(best, sum);
    }
    return best;
}

double frobenius_norm(const Matrix& a)
{
    double sum = 0.0;
    for (double v : a.values()) sum += v * v;
    return std::sqrt(sum);
}

double select_kth(std::span<double> v, std::size_t k)
{
    if (v.empty()) throw std::invalid_argument("empty sequence");
    if (k >= v.size()) throw std::out_of_range("select_kth: rank out of range");

    std::size_t lo = 0;
    std::size_t hi = v.size() - 1;
    // Median-of-three pivots are deterministic but can be defeated by crafted
    // inputs; past this many rounds hand the rest to the library introselect.
    std::size_t budget = 4 * static_cast<std::size_t>(std::log2(static_cast<double>(v.size())) + 1);

    while (lo < hi) {
        if (budget-- == 0) {
            std::nth_element(v.begin() + static_cast<std::ptrdiff_t>(lo), v.begin() + static_cast<std::ptrdiff_t>(k),
                             v.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
            return v[k];
        }
        const std::size_t mid = lo + (hi - lo) / 2;
        const double a = v[lo], b = v[mid], c = v[hi];
        const double pivot = std::max(std::min(a, b), std::min(std::max(a, b), c));

        // Three-way partition: [lo, lt) < pivot, [lt, i) == pivot, (gt, hi] > pivot.
        std::size_t lt = lo, i = lo, gt = hi;
        while (i <= gt) {
            if (v[i] < pivot) {
                std::swap(v[lt++], v[i++]);
            } else if (v[i] > pivot) {
                std::swap(v[i], v[gt]);
                if (gt == 0) break;
                --gt;
            } else {
                ++i;
            }
        }
        if (k < lt) {
            hi = lt - 1;
        } else if (k > gt) {
            lo = gt + 1;
        } else {
            return pivot;
        }
    }
    return v[k];
}

double quickselect_median(std::span<const double> x)
{
    if (x.empty()) throw std::invalid_argument("empty sequence");
    std::vector<double> scratch(x.begin(), x.end());
    return select_kth(scratch, (scratch.size() - 1) / 2);
}

namespace {

double off_diagonal_norm(const Matrix& a)
{
    double sum = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) sum += a(i, j) * a(i, j);
    return std::sqrt(sum);
}

void fix_sign(Matrix& v, std::size_t col)
{
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t r = 0; r < v.rows(); ++r) {
        if (std::abs(v(r, col)) > best) {
            best = std::abs(v(r, col));
            arg = r;
        }
    }
    if (v(arg, col) < 0.0)
        for (std::size_t r = 0; r < v.rows(); ++r) v(r, col) = -v(r, col);
}

}  // namespace

SymmetricEigenResult eigh(const Matrix& c)
{
    if (c.rows() != c.cols()) throw std::invalid_argument("matrix not square");
    const std::size_t n = c.rows();

    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (c(i, j) + c(j, i));
    Matrix v = Matrix::identity(n);

    const double tol = 1e-12 * frobenius_norm(a);
    for (int sweep = 0; sweep < 100; ++sweep) {
        if (off_diagonal_norm(a) <= tol) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double cs = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * cs;

                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = cs * akp - sn * akq;
                    a(k, q) = sn * akp + cs * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = cs * apk - sn * aqk;
                    a(q, k) = sn * apk + cs * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = cs * vkp - sn * vkq;
                    v(k, q) = sn * vkp + cs * vkq;
                }
            }
        }
    }

    for (std::size_t j = 0; j < n; ++j) fix_sign(v, j);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

    // Equal eigenvalues are ordered by their sign-fixed eigenvector,
    // lexicographically largest first.
    auto column_greater = [&](std::size_t i, std::size_t j) {
        for (std::size_t r = 0; r < n; ++r) {
            if (v(r, i) != v(r, j)) return v(r, i) > v(r, j);
        }
        return false;
    };
    for (std::size_t start = 0; start < n;) {
        std::size_t end = start + 1;
        while (end < n && a(order[start], order[start]) == a(order[end], order[end])) ++end;
        if (end - start > 1)
            std::stable_sort(order.begin() + static_cast<std::ptrdiff_t>(start),
                             order.begin() + static_cast<std::ptrdiff_t>(end), column_greater);
        start = end;
    }

    SymmetricEigenResult result{std::vector<double>(n), Matrix(n, n)};
    for (std::size_t j = 0; j < n; ++j) {
        result.eigenvalues[j] = a(order[j], order[j]);
        for (std::size_t r = 0; r < n; ++r) result.eigenvectors(r, j) = v(r, order[j]);
    }
    return result;
}

}  // namespace scatter
