#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace scatter {

using Complex = std::complex<double>;

/// Dense row-major matrix. Sized for the small covariance and feature
/// matrices the pipeline builds, not for general linear algebra.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> values() const { return data_; }

    Matrix transposed() const;

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix multiply(const Matrix& a, const Matrix& b);

/// Max absolute row sum.
double inf_norm(const Matrix& a);
double frobenius_norm(const Matrix& a);

struct ComplexSpectrum {
    std::vector<Complex> bins;
    std::size_t length() const { return bins.size(); }
};

/// Precomputed mixed-radix FFT for one transform size.
///
/// Sizes with prime factors up to 31 run a recursive decimation-in-time
/// transform with dedicated radix-2/3/4 butterflies; anything else goes
/// through Bluestein's chirp-z on a power-of-two inner plan. A plan is
/// immutable once built and may be shared between threads.
class FftPlan {
public:
    explicit FftPlan(std::size_t n);

    std::size_t size() const { return n_; }

    /// X[k] = sum_t x[t] exp(-2 pi i k t / n). `in` and `out` must not alias.
    void forward(std::span<const Complex> in, std::span<Complex> out) const;
    /// Inverse transform including the 1/n factor.
    void inverse(std::span<const Complex> in, std::span<Complex> out) const;

private:
    void transform(const Complex* in, Complex* out) const;
    void work(Complex* out, const Complex* in, std::size_t fstride, const std::size_t* factors) const;
    void bluestein(const Complex* in, Complex* out) const;

    std::size_t n_;
    std::vector<std::size_t> factors_;  // (radix, remaining) pairs
    std::vector<Complex> twiddles_;
    // Bluestein state, only populated for sizes with large prime factors.
    std::shared_ptr<const FftPlan> inner_;
    std::vector<Complex> chirp_;
    std::vector<Complex> chirp_filter_hat_;
};

/// Smallest 2^a 3^b 5^c that is >= n.
std::size_t next_fast_size(std::size_t n);

ComplexSpectrum fft(std::span<const double> x);
ComplexSpectrum fft(std::span<const Complex> x);
std::vector<Complex> ifft(const ComplexSpectrum& spectrum);

/// Full linear convolution (length a.size() + b.size() - 1) computed through
/// zero-padded FFTs.
std::vector<double> convolve(std::span<const double> a, std::span<const double> b);

/// k-th smallest element (0-based) by three-way quickselect. Reorders
/// `values`. Expected linear time.
double select_kth(std::span<double> values, std::size_t k);

/// Lower median: the ceil(n/2)-th smallest element, 1-based.
double quickselect_median(std::span<const double> x);

struct SymmetricEigenResult {
    std::vector<double> eigenvalues;  // non-increasing
    Matrix eigenvectors;              // column i pairs with eigenvalues[i]
};

/// Cyclic Jacobi eigensolver for symmetric matrices. The input is symmetrized
/// by averaging with its transpose. Each eigenvector is sign-fixed so its
/// largest-magnitude component (lowest index on ties) is positive.
SymmetricEigenResult eigh(const Matrix& c);

}  // namespace scatter
