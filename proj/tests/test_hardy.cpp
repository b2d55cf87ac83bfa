#include <doctest.h>

#include <random>

#include "hardylift/hardy.hpp"
#include "hardylift/inner_gen.hpp"

using namespace hardylift;

namespace {

// modified Gram-Schmidt over the same column set, as an independent route to
// the projection
Matrix mgsProjection(Matrix cols) {
    std::vector<Eigen::VectorXcd> basis;
    for (Eigen::Index c = 0; c < cols.cols(); ++c) {
        Eigen::VectorXcd v = cols.col(c);
        for (const auto& q : basis) v -= q.dot(v) * q;
        for (const auto& q : basis) v -= q.dot(v) * q;  // second pass
        const double norm = v.norm();
        if (norm > 1e-10) basis.push_back(v / norm);
    }
    Matrix p = Matrix::Zero(cols.rows(), cols.rows());
    for (const auto& q : basis) p += q * q.adjoint();
    return p;
}

Matrix randomUnitary(std::uint64_t seed, int dim) {
    std::mt19937_64 gen(seed);
    auto u = [&]() { return static_cast<double>(gen() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
    Matrix a(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) a(i, j) = Complex(u(), u());
    Eigen::HouseholderQR<Matrix> qr(a);
    return qr.householderQ() * Matrix::Identity(dim, dim);
}

}  // namespace

TEST_CASE("shiftMatrix: ones on the first block subdiagonal") {
    const TruncatedHardyModel model{1, 2};
    const Matrix s = shiftMatrix(model);
    Matrix expected = Matrix::Zero(3, 3);
    expected(1, 0) = 1.0;
    expected(2, 1) = 1.0;
    CHECK(operatorNorm(s - expected) == doctest::Approx(0.0));
}

TEST_CASE("shiftMatrix: isometric below the truncation edge") {
    const TruncatedHardyModel model{2, 8};
    const Matrix s = shiftMatrix(model);
    const Matrix g = s.adjoint() * s;
    // identity on degrees <= D-1, zero block at degree D
    const int keep = model.n * model.D;
    CHECK(operatorNorm(g.topLeftCorner(keep, keep) - Matrix::Identity(keep, keep)) <
          1e-15);
    CHECK(g.bottomRightCorner(model.n, model.n).norm() == doctest::Approx(0.0));
}

TEST_CASE("shiftMatrix: acts as the coefficient shift on a Blaschke factor") {
    const TruncatedHardyModel model{1, 64};
    const MatrixLaurentSeries b = blaschkeScalar(Complex(0.5, 0.0), 64);
    Eigen::VectorXcd coeffs = Eigen::VectorXcd::Zero(model.dim());
    for (int k = 0; k <= 64; ++k) coeffs(k) = b.coeff(k)(0, 0);
    const Eigen::VectorXcd shifted = shiftMatrix(model) * coeffs;
    // oracle: coefficients of z*b truncated at D
    for (int k = 0; k <= 64; ++k) {
        const Complex expected = k == 0 ? Complex(0.0) : b.coeff(k - 1)(0, 0);
        CHECK(std::abs(shifted(k) - expected) < 1e-15);
    }
}

TEST_CASE("toeplitz: identity symbol gives the identity") {
    const TruncatedHardyModel model{2, 5};
    const Matrix t =
        toeplitzMatrix(MatrixLaurentSeries::constant(Matrix::Identity(2, 2)), model);
    CHECK(operatorNorm(t - Matrix::Identity(model.dim(), model.dim())) == doctest::Approx(0.0));
}

TEST_CASE("toeplitz: symbol z reproduces the shift matrix") {
    const TruncatedHardyModel model{1, 2};
    const Matrix t =
        toeplitzMatrix(MatrixLaurentSeries::monomial(Matrix::Identity(1, 1), 1), model);
    CHECK(operatorNorm(t - shiftMatrix(model)) == doctest::Approx(0.0));
}

TEST_CASE("toeplitz: Blaschke symbol matches the geometric expansion oracle") {
    const TruncatedHardyModel model{1, 64};
    const MatrixLaurentSeries b = blaschkeScalar(Complex(0.5, 0.0), 64);
    // closed form for (0.5 - z)/(1 - 0.5 z): c0 = 0.5, ck = -0.75 * 0.5^{k-1}
    double sumSq = 0.0;
    for (int k = 0; k <= 64; ++k) {
        const Complex expected =
            k == 0 ? Complex(0.5) : Complex(-0.75 * std::pow(0.5, k - 1));
        CHECK(std::abs(b.coeff(k)(0, 0) - expected) < 1e-14);
        sumSq += std::norm(b.coeff(k)(0, 0));
    }
    CHECK(sumSq == doctest::Approx(1.0).epsilon(1e-12));
    const Matrix t = toeplitzMatrix(b, model);
    for (Eigen::Index c = 0; c < t.cols(); ++c) CHECK(t.col(c).norm() <= 1.0 + 1e-12);
}

TEST_CASE("toeplitz: non-analytic symbol is rejected") {
    const TruncatedHardyModel model{1, 4};
    const MatrixLaurentSeries bad =
        MatrixLaurentSeries::monomial(Matrix::Identity(1, 1), -1);
    CHECK_THROWS_AS(toeplitzMatrix(bad, model), std::invalid_argument);
}

TEST_CASE("projectionFromInner: identity symbol projects onto everything") {
    const TruncatedHardyModel model{2, 6};
    const InnerCertificate cert =
        certifyInner(MatrixLaurentSeries::constant(Matrix::Identity(2, 2)));
    const OrthoProjection p = projectionFromInner(cert, model);
    CHECK(operatorNorm(p.matrix - Matrix::Identity(model.dim(), model.dim())) < 1e-12);
}

TEST_CASE("projectionFromInner: symbol z kills exactly degree zero") {
    const TruncatedHardyModel model{2, 6};
    const InnerCertificate cert =
        certifyInner(MatrixLaurentSeries::monomial(Matrix::Identity(2, 2), 1));
    const OrthoProjection p = projectionFromInner(cert, model);
    Matrix expected = Matrix::Identity(model.dim(), model.dim());
    expected.topLeftCorner(2, 2).setZero();
    CHECK(operatorNorm(p.matrix - expected) < 1e-12);
}

TEST_CASE("projectionFromInner: agrees with a modified Gram-Schmidt oracle") {
    const TruncatedHardyModel model{1, 64};
    const InnerCertificate cert = certifyInner(blaschkeScalar(Complex(0.5, 0.0), 64));
    const int cap = model.D - degTail(cert.series);
    const OrthoProjection p = projectionFromInner(cert, model);
    const Matrix cols = toeplitzMatrix(cert.series, model).leftCols(cap + 1);
    CHECK(operatorNorm(p.matrix - mgsProjection(cols)) < 1e-9);
}

TEST_CASE("projectionFromInner: invalid certificate is rejected") {
    const TruncatedHardyModel model{1, 8};
    Matrix half(1, 1);
    half(0, 0) = 0.5;
    const InnerCertificate cert = certifyInner(MatrixLaurentSeries::constant(half));
    CHECK(cert.isometryDefect > 0.5);
    CHECK_THROWS_AS(projectionFromInner(cert, model), std::invalid_argument);
}

TEST_CASE("projectionFromInner: gauge invariance under a constant unitary") {
    const InnerPathSpec spec = makeSeededSpec(5, 2, 2, 2, 5, 48);
    const TruncatedHardyModel model = spec.model();
    const InnerCertificate cert = potapovProduct(spec, 0);
    const Matrix u = randomUnitary(99, 2);
    const InnerCertificate rotated = certifyInner(cert.series.rightMultiplied(u), 512);
    const OrthoProjection p = projectionFromInner(cert, model);
    const OrthoProjection q = projectionFromInner(rotated, model);
    Matrix diff = p.matrix - q.matrix;
    diff = (diff + diff.adjoint()) / 2.0;
    CHECK(hermitianOperatorNorm(diff) < 1e-10);
}

TEST_CASE("toeplitz columns of an inner symbol are orthonormal below the cap") {
    const InnerCertificate cert = certifyInner(blaschkeScalar(Complex(0.5, 0.0), 64));
    const TruncatedHardyModel model{1, 64};
    const int cap = model.D - degTail(cert.series);
    const Matrix cols = toeplitzMatrix(cert.series, model).leftCols(cap + 1);
    CHECK(operatorNorm(cols.adjoint() * cols - Matrix::Identity(cap + 1, cap + 1)) <=
          1e-8);
}

TEST_CASE("invarianceDefect: projections from inner symbols are invariant") {
    const TruncatedHardyModel model{1, 64};
    const InnerCertificate cert = certifyInner(blaschkeScalar(Complex(0.5, 0.0), 64));
    const OrthoProjection p = projectionFromInner(cert, model);
    CHECK(invarianceDefect(p, model) <= 1e-8);
}

TEST_CASE("invarianceDefect: the degree-zero spike is anti-invariant") {
    const TruncatedHardyModel model{2, 6};
    Matrix p = Matrix::Zero(model.dim(), model.dim());
    p(0, 0) = 1.0;  // span of the degree-0 channel-0 basis vector
    CHECK(invarianceDefect(OrthoProjection::fromMatrix(p), model) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("invarianceDefect: the full space is invariant") {
    const TruncatedHardyModel model{2, 6};
    const OrthoProjection p =
        OrthoProjection::fromMatrix(Matrix::Identity(model.dim(), model.dim()));
    CHECK(invarianceDefect(p, model) == doctest::Approx(0.0));
}

TEST_CASE("wanderingDimension: full space has n wandering channels") {
    const TruncatedHardyModel model{3, 6};
    const OrthoProjection p =
        OrthoProjection::fromMatrix(Matrix::Identity(model.dim(), model.dim()));
    CHECK(wanderingDimension(p, model) == 3);
}

TEST_CASE("wanderingDimension: shifted subspace keeps n channels") {
    const TruncatedHardyModel model{2, 8};
    const InnerCertificate cert =
        certifyInner(MatrixLaurentSeries::monomial(Matrix::Identity(2, 2), 1));
    const OrthoProjection p = projectionFromInner(cert, model);
    CHECK(wanderingDimension(p, model) == 2);
}

TEST_CASE("wanderingDimension: constant column embedding has one channel") {
    const TruncatedHardyModel model{2, 8};
    Matrix col(2, 1);
    col << 1.0, 0.0;
    const InnerCertificate cert = certifyInner(MatrixLaurentSeries::constant(col));
    const OrthoProjection p = projectionFromInner(cert, model);
    CHECK(wanderingDimension(p, model) == 1);
}

TEST_CASE("wanderingDimension: non-invariant input is a precondition error") {
    const TruncatedHardyModel model{1, 6};
    Matrix p = Matrix::Zero(model.dim(), model.dim());
    p(0, 0) = 1.0;
    CHECK_THROWS_AS(wanderingDimension(OrthoProjection::fromMatrix(p), model),
                    std::invalid_argument);
}

TEST_CASE("pathModulus: constant path has zero steps") {
    const SynthesizedPath sp = synthesizePath(makeConstantSpec(2, 1, 4, 24));
    for (double v : pathModulus(sp.path)) CHECK(v <= 1e-12);
}

TEST_CASE("pathModulus: orthogonal rank-one projections are distance one apart") {
    ProjectionPath path;
    path.model = TruncatedHardyModel{1, 1};
    path.tGrid = {0.0, 1.0};
    Matrix p0 = Matrix::Zero(2, 2), p1 = Matrix::Zero(2, 2);
    p0(0, 0) = 1.0;
    p1(1, 1) = 1.0;
    path.projections = {OrthoProjection::fromMatrix(p0), OrthoProjection::fromMatrix(p1)};
    const auto moduli = pathModulus(path);
    REQUIRE(moduli.size() == 1);
    CHECK(moduli[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("pathModulus: Blaschke drift halves under grid refinement") {
    const auto coarse =
        pathModulus(synthesizePath(makeBlaschkeLineSpec(0.3, 0.5, 11, 48)).path);
    const auto fine =
        pathModulus(synthesizePath(makeBlaschkeLineSpec(0.3, 0.5, 21, 48)).path);
    double coarseMax = 0.0, fineMax = 0.0;
    for (double v : coarse) {
        CHECK(v <= 0.2);
        coarseMax = std::max(coarseMax, v);
    }
    for (double v : fine) fineMax = std::max(fineMax, v);
    CHECK(fineMax == doctest::Approx(coarseMax / 2.0).epsilon(0.1));
}

TEST_CASE("rank stability along synthesized paths") {
    const SynthesizedPath sp = synthesizePath(makeBlaschkeLineSpec(0.3, 0.5, 9, 48));
    const auto moduli = pathModulus(sp.path);
    int rank0 = numericalRankHermitian(sp.path.projections[0].matrix);
    for (size_t j = 0; j + 1 < sp.path.projections.size(); ++j) {
        REQUIRE(moduli[j] < 1.0);
        CHECK(numericalRankHermitian(sp.path.projections[j + 1].matrix) == rank0);
    }
}
