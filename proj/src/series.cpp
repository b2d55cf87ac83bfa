#include "hardylift/series.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hardylift {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

MatrixLaurentSeries::MatrixLaurentSeries(int rows, int cols, int lo,
                                         std::vector<Matrix> coeffs)
    : rows_(rows), cols_(cols), lo_(lo), coeffs_(std::move(coeffs)) {
    if (rows_ <= 0 || cols_ <= 0)
        throw std::invalid_argument("series: dimensions must be positive");
    if (coeffs_.empty())
        throw std::invalid_argument("series: at least one coefficient required");
    for (const Matrix& c : coeffs_) {
        if (c.rows() != rows_ || c.cols() != cols_)
            throw std::invalid_argument("series: coefficient shape mismatch");
    }
}

MatrixLaurentSeries MatrixLaurentSeries::zero(int rows, int cols, int lo) {
    return MatrixLaurentSeries(rows, cols, lo, {Matrix::Zero(rows, cols)});
}

MatrixLaurentSeries MatrixLaurentSeries::constant(const Matrix& value) {
    return MatrixLaurentSeries(static_cast<int>(value.rows()),
                               static_cast<int>(value.cols()), 0, {value});
}

MatrixLaurentSeries MatrixLaurentSeries::monomial(const Matrix& value, int degree) {
    return MatrixLaurentSeries(static_cast<int>(value.rows()),
                               static_cast<int>(value.cols()), degree, {value});
}

Matrix MatrixLaurentSeries::coeff(int k) const {
    if (k < lo_ || k > hi()) return Matrix::Zero(rows_, cols_);
    return coeffs_[static_cast<size_t>(k - lo_)];
}

MatrixLaurentSeries MatrixLaurentSeries::trimmed(double eps) const {
    int first = 0;
    int last = static_cast<int>(coeffs_.size()) - 1;
    while (first < last && coeffs_[first].norm() <= eps) ++first;
    while (last > first && coeffs_[last].norm() <= eps) --last;
    std::vector<Matrix> kept(coeffs_.begin() + first, coeffs_.begin() + last + 1);
    return MatrixLaurentSeries(rows_, cols_, lo_ + first, std::move(kept));
}

MatrixLaurentSeries MatrixLaurentSeries::truncated(int maxDegree) const {
    if (maxDegree < lo_) return zero(rows_, cols_, std::max(lo_, 0));
    int last = std::min(hi(), maxDegree);
    std::vector<Matrix> kept(coeffs_.begin(), coeffs_.begin() + (last - lo_ + 1));
    return MatrixLaurentSeries(rows_, cols_, lo_, std::move(kept));
}

MatrixLaurentSeries MatrixLaurentSeries::operator+(const MatrixLaurentSeries& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("series add: dimension mismatch");
    int lo = std::min(lo_, other.lo_);
    int hiDeg = std::max(hi(), other.hi());
    std::vector<Matrix> out(static_cast<size_t>(hiDeg - lo + 1),
                            Matrix::Zero(rows_, cols_));
    for (int k = lo; k <= hiDeg; ++k)
        out[static_cast<size_t>(k - lo)] = coeff(k) + other.coeff(k);
    return MatrixLaurentSeries(rows_, cols_, lo, std::move(out));
}

MatrixLaurentSeries MatrixLaurentSeries::operator-(const MatrixLaurentSeries& other) const {
    return *this + other.scaled(Complex(-1.0, 0.0));
}

MatrixLaurentSeries MatrixLaurentSeries::operator*(const MatrixLaurentSeries& other) const {
    if (cols_ != other.rows_)
        throw std::invalid_argument("series multiply: inner dimension mismatch");
    int lo = lo_ + other.lo_;
    int hiDeg = hi() + other.hi();
    std::vector<Matrix> out(static_cast<size_t>(hiDeg - lo + 1),
                            Matrix::Zero(rows_, other.cols_));
    for (int i = lo_; i <= hi(); ++i) {
        const Matrix& a = coeffs_[static_cast<size_t>(i - lo_)];
        for (int j = other.lo_; j <= other.hi(); ++j) {
            out[static_cast<size_t>(i + j - lo)] +=
                a * other.coeffs_[static_cast<size_t>(j - other.lo_)];
        }
    }
    return MatrixLaurentSeries(rows_, other.cols_, lo, std::move(out));
}

MatrixLaurentSeries MatrixLaurentSeries::scaled(const Complex& factor) const {
    std::vector<Matrix> out = coeffs_;
    for (Matrix& c : out) c *= factor;
    return MatrixLaurentSeries(rows_, cols_, lo_, std::move(out));
}

MatrixLaurentSeries MatrixLaurentSeries::rightMultiplied(const Matrix& factor) const {
    if (cols_ != factor.rows())
        throw std::invalid_argument("series rightMultiplied: dimension mismatch");
    std::vector<Matrix> out;
    out.reserve(coeffs_.size());
    for (const Matrix& c : coeffs_) out.push_back(c * factor);
    return MatrixLaurentSeries(rows_, static_cast<int>(factor.cols()), lo_,
                               std::move(out));
}

double MatrixLaurentSeries::hsNormSquared() const {
    double s = 0.0;
    for (const Matrix& c : coeffs_) s += c.squaredNorm();
    return s;
}

double operatorNorm(const Matrix& a) {
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    if (a.rows() == 1 && a.cols() == 1) return std::abs(a(0, 0));
    if (std::max(a.rows(), a.cols()) <= 32) {
        Eigen::JacobiSVD<Matrix> svd(a);
        return svd.singularValues()(0);
    }
    // sigma_max via the smaller Gram matrix; cheaper than a full SVD here
    const Matrix gram =
        a.cols() <= a.rows() ? Matrix(a.adjoint() * a) : Matrix(a * a.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
    const double top = es.eigenvalues()(es.eigenvalues().size() - 1);
    return top > 0.0 ? std::sqrt(top) : 0.0;
}

Matrix eval(const MatrixLaurentSeries& series, const CirclePoint& p) {
    if (p.r < 0.0 || p.r > 1.0)
        throw std::domain_error("eval: radius outside [0, 1]");
    if (p.r < 1.0 && !series.analytic())
        throw std::domain_error("eval: interior evaluation of a non-analytic series");
    const Complex z = p.value();
    // Horner over descending degree, then multiply by z^lo at the end.
    Matrix acc = Matrix::Zero(series.rows(), series.cols());
    for (int k = series.hi(); k >= series.lo(); --k)
        acc = acc * z + series.coeff(k);
    if (series.lo() != 0) acc *= std::pow(z, series.lo());
    return acc;
}

std::vector<Matrix> sampleGrid(const MatrixLaurentSeries& series, int J) {
    const int span = series.hi() - series.lo();
    if (J < 2 * span + 1)
        throw std::invalid_argument("sampleGrid: J below the aliasing bound");
    std::vector<Matrix> out;
    out.reserve(static_cast<size_t>(J));
    for (int j = 0; j < J; ++j)
        out.push_back(eval(series, CirclePoint{kTwoPi * j / J, 1.0}));
    return out;
}

L2Distance l2Distance(const MatrixLaurentSeries& a, const MatrixLaurentSeries& b,
                      int J) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("l2Distance: dimension mismatch");
    const MatrixLaurentSeries diff = a - b;
    const double hs = std::sqrt(diff.hsNormSquared());
    const int span = diff.hi() - diff.lo();
    const int grid = std::max(J, 2 * span + 1);
    double accum = 0.0;
    for (int j = 0; j < grid; ++j) {
        const Matrix v = eval(diff, CirclePoint{kTwoPi * j / grid, 1.0});
        const double w = operatorNorm(v);
        accum += w * w;
    }
    return L2Distance{hs, std::sqrt(accum / grid)};
}

double supNormDistance(const MatrixLaurentSeries& a, const MatrixLaurentSeries& b,
                       int J) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("supNormDistance: dimension mismatch");
    const MatrixLaurentSeries diff = a - b;
    double best = 0.0;
    for (int j = 0; j < J; ++j) {
        const Matrix v = eval(diff, CirclePoint{kTwoPi * j / J, 1.0});
        best = std::max(best, operatorNorm(v));
    }
    return best;
}

InnerCertificate certifyInner(const MatrixLaurentSeries& series, int gridSize) {
    if (!series.analytic())
        throw std::domain_error("certifyInner: series must be analytic");
    const Matrix eye = Matrix::Identity(series.cols(), series.cols());
    double defect = 0.0;
    for (int j = 0; j < gridSize; ++j) {
        const Matrix v = eval(series, CirclePoint{kTwoPi * j / gridSize, 1.0});
        defect = std::max(defect, operatorNorm(v.adjoint() * v - eye));
    }
    return InnerCertificate{series, defect, gridSize};
}

}  // namespace hardylift
