#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace hardylift {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Point r*e^{i*theta} in the closed unit disk. r defaults to the boundary.
struct CirclePoint {
    double theta = 0.0;
    double r = 1.0;

    Complex value() const { return std::polar(r, theta); }
};

/// Truncated Fourier representation of a matrix-valued function on the unit
/// circle: F(z) = sum_{k=lo}^{hi} coeffs[k-lo] * z^k, with rows x cols
/// complex matrix coefficients. A series with lo >= 0 is analytic and may be
/// evaluated inside the open disk.
class MatrixLaurentSeries {
public:
    MatrixLaurentSeries(int rows, int cols, int lo, std::vector<Matrix> coeffs);

    /// Zero series supported on the single degree `lo`.
    static MatrixLaurentSeries zero(int rows, int cols, int lo = 0);
    /// Constant series F(z) = value.
    static MatrixLaurentSeries constant(const Matrix& value);
    /// Monomial F(z) = value * z^degree.
    static MatrixLaurentSeries monomial(const Matrix& value, int degree);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(coeffs_.size()) - 1; }
    bool analytic() const { return lo_ >= 0; }

    const std::vector<Matrix>& coeffs() const { return coeffs_; }
    /// Coefficient of z^k; zero matrix when k is outside [lo, hi].
    Matrix coeff(int k) const;

    /// Drops leading/trailing coefficients below `eps` in HS norm.
    MatrixLaurentSeries trimmed(double eps = 0.0) const;
    /// Restricts to degrees [0, maxDegree] (analytic truncation).
    MatrixLaurentSeries truncated(int maxDegree) const;

    MatrixLaurentSeries operator+(const MatrixLaurentSeries& other) const;
    MatrixLaurentSeries operator-(const MatrixLaurentSeries& other) const;
    MatrixLaurentSeries operator*(const MatrixLaurentSeries& other) const;
    MatrixLaurentSeries scaled(const Complex& factor) const;
    /// Right-multiplies every coefficient by a constant matrix.
    MatrixLaurentSeries rightMultiplied(const Matrix& factor) const;

    double hsNormSquared() const;

private:
    int rows_;
    int cols_;
    int lo_;
    std::vector<Matrix> coeffs_;
};

/// Largest singular value.
double operatorNorm(const Matrix& a);

/// Evaluates the series at p = p.r * e^{i p.theta}. Interior evaluation
/// (p.r < 1) requires an analytic series.
Matrix eval(const MatrixLaurentSeries& series, const CirclePoint& p);

/// Values at theta_j = 2*pi*j/J on the boundary. Requires
/// J >= 2*(hi - lo) + 1 so the samples determine the coefficients.
std::vector<Matrix> sampleGrid(const MatrixLaurentSeries& series, int J);

struct L2Distance {
    double hs;            // sqrt(sum_k ||A_k - B_k||_HS^2), Parseval-exact
    double operatorGrid;  // sqrt of the grid quadrature of ||diff(theta)||^2
};

/// L2 distance between two series of matching shape. The HS reading is exact
/// by Parseval; the operator-norm reading is a grid quadrature and is always
/// dominated by the HS value.
L2Distance l2Distance(const MatrixLaurentSeries& a, const MatrixLaurentSeries& b,
                      int J = 1024);

/// Max over the theta-grid of the operator norm of a - b. A lower bound of
/// the essential supremum, converging as J grows for trigonometric
/// polynomials.
double supNormDistance(const MatrixLaurentSeries& a, const MatrixLaurentSeries& b,
                       int J = 1024);

/// Analytic series together with its measured deviation from being an
/// isometry on the circle: max_theta ||G(theta)^* G(theta) - I||.
struct InnerCertificate {
    MatrixLaurentSeries series;
    double isometryDefect;
    int gridSize;

    bool valid(double tolInner) const { return isometryDefect <= tolInner; }
};

/// Measures the isometry defect of an analytic series on a theta-grid.
InnerCertificate certifyInner(const MatrixLaurentSeries& series, int gridSize = 512);

}  // namespace hardylift
