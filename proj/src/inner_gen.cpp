#include "hardylift/inner_gen.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace hardylift {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Deterministic uniform doubles from the raw 64-bit stream.
struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}

    double unit() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
    Complex complexUnit() { return Complex(uniform(-1.0, 1.0), uniform(-1.0, 1.0)); }

    Matrix complexMatrix(int rows, int cols) {
        Matrix m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m(i, j) = complexUnit();
        return m;
    }

    Matrix unitary(int dim) {
        Eigen::HouseholderQR<Matrix> qr(complexMatrix(dim, dim));
        return qr.householderQ() * Matrix::Identity(dim, dim);
    }

    Matrix hermitian(int dim) {
        Matrix a = complexMatrix(dim, dim);
        Matrix h = (a + a.adjoint()) / 2.0;
        const double norm = operatorNorm(h);
        if (norm > 0.0) h /= norm;
        return h;
    }
};

Matrix unitaryExp(const Eigen::SelfAdjointEigenSolver<Matrix>& es, double tau) {
    const auto& v = es.eigenvectors();
    const auto& lam = es.eigenvalues();
    Eigen::VectorXcd phases(lam.size());
    for (Eigen::Index i = 0; i < lam.size(); ++i)
        phases(i) = std::polar(1.0, tau * lam(i));
    return v * phases.asDiagonal() * v.adjoint();
}

}  // namespace

void PotapovFactor::validate() const {
    if (std::abs(zero) > 0.9)
        throw std::invalid_argument("potapov factor: |a| exceeds 0.9");
    if (operatorNorm(projector * projector - projector) > 1e-12 ||
        operatorNorm(projector - projector.adjoint()) > 1e-12)
        throw std::invalid_argument("potapov factor: projector not idempotent");
    if (std::abs(projector.trace().real() - 1.0) > 1e-10)
        throw std::invalid_argument("potapov factor: projector rank must be 1");
    const Matrix eye = Matrix::Identity(leftUnitary.rows(), leftUnitary.cols());
    if (operatorNorm(leftUnitary.adjoint() * leftUnitary - eye) > 1e-12)
        throw std::invalid_argument("potapov factor: left factor not unitary");
}

PotapovFactor FactorPath::at(size_t tIndex) const {
    const Complex a = zeroTable.size() == 1 ? zeroTable[0] : zeroTable.at(tIndex);
    const Matrix u = unitaryTable.size() == 1 ? unitaryTable[0] : unitaryTable.at(tIndex);
    return PotapovFactor{a, projector, u};
}

void InnerPathSpec::validate() const {
    if (n <= 0 || m <= 0 || m > n)
        throw std::invalid_argument("spec: need 0 < m <= n");
    if (D < 1) throw std::invalid_argument("spec: D must be positive");
    if (embedIsometry.rows() != n || embedIsometry.cols() != m)
        throw std::invalid_argument("spec: embed isometry must be n x m");
    const Matrix eyeM = Matrix::Identity(m, m);
    if (operatorNorm(embedIsometry.adjoint() * embedIsometry - eyeM) > 1e-10)
        throw std::invalid_argument("spec: embed is not an isometry");
    if (tGrid.size() < 2 || tGrid.front() != 0.0 || tGrid.back() != 1.0)
        throw std::invalid_argument("spec: tGrid must run from 0 to 1");
    for (size_t i = 1; i < tGrid.size(); ++i)
        if (tGrid[i] <= tGrid[i - 1])
            throw std::invalid_argument("spec: tGrid must be strictly increasing");
    for (const FactorPath& f : factors) {
        if (f.zeroTable.empty() || f.unitaryTable.empty())
            throw std::invalid_argument("spec: empty trajectory table");
        if (f.zeroTable.size() != 1 && f.zeroTable.size() != tGrid.size())
            throw std::invalid_argument("spec: zero table length mismatch");
        if (f.unitaryTable.size() != 1 && f.unitaryTable.size() != tGrid.size())
            throw std::invalid_argument("spec: unitary table length mismatch");
        for (size_t i = 0; i < tGrid.size(); ++i) f.at(i).validate();
        for (size_t i = 1; i < f.zeroTable.size(); ++i)
            if (std::abs(f.zeroTable[i] - f.zeroTable[i - 1]) > 0.3)
                throw std::invalid_argument("spec: zero trajectory jump exceeds 0.3");
    }
}

MatrixLaurentSeries blaschkeScalar(const Complex& a, int D) {
    if (std::abs(a) >= 1.0)
        throw std::invalid_argument("blaschkeScalar: |a| must be < 1");
    std::vector<Matrix> coeffs;
    if (a == Complex(0.0, 0.0)) {
        // convention b_0(z) = z
        Matrix one(1, 1);
        one(0, 0) = 1.0;
        return MatrixLaurentSeries::monomial(one, 1);
    }
    const Complex prefactor = std::abs(a) / a;
    const Complex abar = std::conj(a);
    const double a2 = std::norm(a);
    coeffs.reserve(static_cast<size_t>(D) + 1);
    Matrix c0(1, 1);
    c0(0, 0) = prefactor * a;  // = |a|
    coeffs.push_back(c0);
    Complex tailFactor = -prefactor * (1.0 - a2);
    for (int k = 1; k <= D; ++k) {
        Matrix ck(1, 1);
        ck(0, 0) = tailFactor;
        coeffs.push_back(ck);
        tailFactor *= abar;
    }
    return MatrixLaurentSeries(1, 1, 0, std::move(coeffs));
}

MatrixLaurentSeries potapovFactorSeries(const PotapovFactor& factor, int D) {
    factor.validate();
    const int m = static_cast<int>(factor.projector.rows());
    const MatrixLaurentSeries b = blaschkeScalar(factor.zero, D);
    const Matrix complement = Matrix::Identity(m, m) - factor.projector;
    std::vector<Matrix> coeffs(static_cast<size_t>(b.hi()) + 1, Matrix::Zero(m, m));
    for (int k = 0; k <= b.hi(); ++k)
        coeffs[static_cast<size_t>(k)] = b.coeff(k)(0, 0) * factor.projector;
    coeffs[0] += complement;
    MatrixLaurentSeries inner(m, m, 0, std::move(coeffs));
    std::vector<Matrix> rotated;
    rotated.reserve(inner.coeffs().size());
    for (const Matrix& c : inner.coeffs()) rotated.push_back(factor.leftUnitary * c);
    return MatrixLaurentSeries(m, m, 0, std::move(rotated));
}

InnerCertificate potapovProduct(const InnerPathSpec& spec, size_t tIndex,
                                double tolInner) {
    MatrixLaurentSeries product =
        MatrixLaurentSeries::constant(Matrix::Identity(spec.m, spec.m));
    for (const FactorPath& f : spec.factors) {
        product = (product * potapovFactorSeries(f.at(tIndex), spec.D)).truncated(spec.D);
    }
    std::vector<Matrix> embedded;
    embedded.reserve(product.coeffs().size());
    for (const Matrix& c : product.coeffs()) embedded.push_back(spec.embedIsometry * c);
    MatrixLaurentSeries g(spec.n, spec.m, 0, std::move(embedded));
    InnerCertificate cert = certifyInner(g, 512);
    if (!cert.valid(tolInner)) {
        std::ostringstream msg;
        msg << "potapovProduct: certificate defect " << cert.isometryDefect
            << " exceeds " << tolInner << " at t index " << tIndex;
        throw std::runtime_error(msg.str());
    }
    return cert;
}

SynthesizedPath synthesizePath(const InnerPathSpec& spec, double tolInner) {
    spec.validate();
    const TruncatedHardyModel model = spec.model();
    std::vector<InnerCertificate> certs;
    certs.reserve(spec.tGrid.size());
    int cap = model.D;
    for (size_t i = 0; i < spec.tGrid.size(); ++i) {
        certs.push_back(potapovProduct(spec, i, tolInner));
        cap = std::min(cap, model.D - degTail(certs.back().series));
    }
    if (cap < model.D / 4 + 1)
        throw std::invalid_argument(
            "synthesizePath: truncation degree " + std::to_string(model.D) +
            " leaves only " + std::to_string(cap + 1) +
            " faithful Toeplitz column blocks; raise D or shrink the factor zeros");
    SynthesizedPath out;
    out.path.model = model;
    out.path.tGrid = spec.tGrid;
    out.path.columnCap = cap;
    for (const InnerCertificate& cert : certs) {
        out.path.projections.push_back(projectionFromInner(cert, model, tolInner, cap));
        out.truth.push_back(cert.series);
    }
    out.path.validate();
    return out;
}

std::vector<double> uniformTGrid(int count) {
    if (count < 2) throw std::invalid_argument("tGrid: need at least two points");
    std::vector<double> t(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i)
        t[static_cast<size_t>(i)] = static_cast<double>(i) / (count - 1);
    t.front() = 0.0;
    t.back() = 1.0;
    return t;
}

InnerPathSpec makeSeededSpec(std::uint64_t seed, int n, int m, int numFactors,
                             int tCount, int D, double aMin, double aMax) {
    Rng rng(seed);
    InnerPathSpec spec;
    spec.n = n;
    spec.m = m;
    spec.D = D;
    spec.tGrid = uniformTGrid(tCount);
    spec.embedIsometry = rng.unitary(n).leftCols(m);
    for (int f = 0; f < numFactors; ++f) {
        FactorPath fp;
        Eigen::VectorXcd v = rng.complexMatrix(m, 1);
        v.normalize();
        fp.projector = v * v.adjoint();
        const double rho0 = rng.uniform(aMin, aMax);
        const double rho1 = rng.uniform(aMin, aMax);
        const double phi0 = rng.uniform(0.0, kTwoPi);
        const double omega = rng.uniform(-0.9, 0.9);
        fp.zeroTable.reserve(spec.tGrid.size());
        for (double t : spec.tGrid) {
            const double rho = rho0 + (rho1 - rho0) * t;
            fp.zeroTable.push_back(std::polar(rho, phi0 + omega * t));
        }
        const double speed = rng.uniform(0.0, 0.3);
        Eigen::SelfAdjointEigenSolver<Matrix> es(rng.hermitian(m));
        fp.unitaryTable.reserve(spec.tGrid.size());
        for (double t : spec.tGrid) fp.unitaryTable.push_back(unitaryExp(es, speed * t));
        spec.factors.push_back(std::move(fp));
    }
    spec.validate();
    return spec;
}

InnerPathSpec makeCrossingSpec(int tCount, int D, bool rotateFrame) {
    InnerPathSpec spec;
    spec.n = 3;
    spec.m = 2;
    spec.D = D;
    spec.tGrid = uniformTGrid(tCount);
    spec.embedIsometry = Matrix::Identity(3, 2);

    FactorPath f1;
    f1.projector = Matrix::Zero(2, 2);
    f1.projector(0, 0) = 1.0;
    for (double t : spec.tGrid) f1.zeroTable.push_back(Complex(0.3 + 0.3 * t, 0.0));
    if (rotateFrame) {
        Matrix h(2, 2);
        h << 0.0, 1.0, 1.0, 0.0;
        Eigen::SelfAdjointEigenSolver<Matrix> es(h);
        for (double t : spec.tGrid) f1.unitaryTable.push_back(unitaryExp(es, 0.2 * t));
    } else {
        f1.unitaryTable.push_back(Matrix::Identity(2, 2));
    }
    spec.factors.push_back(std::move(f1));

    FactorPath f2;
    f2.projector = Matrix::Zero(2, 2);
    f2.projector(1, 1) = 1.0;
    for (double t : spec.tGrid) f2.zeroTable.push_back(Complex(0.6 - 0.3 * t, 0.0));
    f2.unitaryTable.push_back(Matrix::Identity(2, 2));
    spec.factors.push_back(std::move(f2));

    spec.validate();
    return spec;
}

InnerPathSpec makeConstantSpec(int n, int m, int tCount, int D) {
    Rng rng(0x5eedULL + static_cast<std::uint64_t>(n) * 31 + static_cast<std::uint64_t>(m));
    InnerPathSpec spec;
    spec.n = n;
    spec.m = m;
    spec.D = D;
    spec.tGrid = uniformTGrid(tCount);
    spec.embedIsometry = rng.unitary(n).leftCols(m);
    spec.validate();
    return spec;
}

InnerPathSpec makeBlaschkeLineSpec(const Complex& a0, const Complex& a1,
                                   int tCount, int D) {
    InnerPathSpec spec;
    spec.n = 1;
    spec.m = 1;
    spec.D = D;
    spec.tGrid = uniformTGrid(tCount);
    spec.embedIsometry = Matrix::Identity(1, 1);
    FactorPath f;
    f.projector = Matrix::Identity(1, 1);
    for (double t : spec.tGrid) f.zeroTable.push_back(a0 + (a1 - a0) * t);
    f.unitaryTable.push_back(Matrix::Identity(1, 1));
    spec.factors.push_back(std::move(f));
    spec.validate();
    return spec;
}

InnerPathSpec makeBlaschkeCircleSpec(double rho, int tCount, int D) {
    InnerPathSpec spec;
    spec.n = 1;
    spec.m = 1;
    spec.D = D;
    spec.tGrid = uniformTGrid(tCount);
    spec.embedIsometry = Matrix::Identity(1, 1);
    FactorPath f;
    f.projector = Matrix::Identity(1, 1);
    for (double t : spec.tGrid) f.zeroTable.push_back(std::polar(rho, kTwoPi * t));
    f.unitaryTable.push_back(Matrix::Identity(1, 1));
    spec.factors.push_back(std::move(f));
    spec.validate();
    return spec;
}

InnerPathSpec makeShiftedSpec(int n, int tCount, int D) {
    InnerPathSpec spec;
    spec.n = n;
    spec.m = n;
    spec.D = D;
    spec.tGrid = uniformTGrid(tCount);
    spec.embedIsometry = Matrix::Identity(n, n);
    for (int i = 0; i < n; ++i) {
        FactorPath f;
        f.projector = Matrix::Zero(n, n);
        f.projector(i, i) = 1.0;
        f.zeroTable.push_back(Complex(0.0, 0.0));
        f.unitaryTable.push_back(Matrix::Identity(n, n));
        spec.factors.push_back(std::move(f));
    }
    spec.validate();
    return spec;
}

}  // namespace hardylift
