#pragma once

#include <cstdint>
#include <vector>

#include "hardylift/hardy.hpp"
#include "hardylift/series.hpp"

namespace hardylift {

/// Elementary matrix inner factor: U * (b_a P + (I - P)) with a single zero
/// a in the disk acting through a rank-1 projector P.
struct PotapovFactor {
    Complex zero;
    Matrix projector;    // m x m, Hermitian idempotent of rank 1
    Matrix leftUnitary;  // m x m

    void validate() const;
};

/// One factor of an inner path: fixed projector, tabulated zero and unitary
/// trajectories over the t-grid (tables of length 1 mean constant).
struct FactorPath {
    std::vector<Complex> zeroTable;
    Matrix projector;
    std::vector<Matrix> unitaryTable;

    PotapovFactor at(size_t tIndex) const;
};

struct InnerPathSpec {
    int n = 1;
    int m = 1;
    int D = 64;
    Matrix embedIsometry;            // n x m constant isometry
    std::vector<FactorPath> factors;
    std::vector<double> tGrid;

    void validate() const;
    TruncatedHardyModel model() const { return TruncatedHardyModel{n, D}; }
};

/// Coefficients of the scalar Blaschke factor (|a|/a)(a - z)/(1 - conj(a) z)
/// truncated at degree D. For a = 0 the factor is z.
MatrixLaurentSeries blaschkeScalar(const Complex& a, int D = 64);

/// m x m series of a single factor, truncated at degree D.
MatrixLaurentSeries potapovFactorSeries(const PotapovFactor& factor, int D);

/// embedIsometry * product of factor series at one grid point, certified on
/// a 512-point grid. Throws when the certificate defect exceeds tolInner.
InnerCertificate potapovProduct(const InnerPathSpec& spec, size_t tIndex,
                                double tolInner = 1e-6);

struct SynthesizedPath {
    ProjectionPath path;
    std::vector<MatrixLaurentSeries> truth;  // generating inner functions
};

/// Projections via projectionFromInner at every grid point, built with a
/// common column cap so the rank is constant along the path.
SynthesizedPath synthesizePath(const InnerPathSpec& spec, double tolInner = 1e-6);

// ---- fixture builders ------------------------------------------------------

std::vector<double> uniformTGrid(int count);

/// Deterministic pseudo-random spec: numFactors rank-1 factors with smooth
/// zero/unitary trajectories, |a| within [aMin, aMax], random constant embed.
InnerPathSpec makeSeededSpec(std::uint64_t seed, int n, int m, int numFactors,
                             int tCount, int D = 64, double aMin = 0.15,
                             double aMax = 0.65);

/// m = 2 < n = 3 fixture whose gram eigenvalues at lambda = 0 cross at
/// t = 0.5: zeros 0.3 + 0.3 t and 0.6 - 0.3 t on separate channels.
InnerPathSpec makeCrossingSpec(int tCount, int D = 64, bool rotateFrame = true);

/// Constant isometric embedding, no factors.
InnerPathSpec makeConstantSpec(int n, int m, int tCount, int D = 64);

/// Scalar path with zero trajectory a(t) = a0 + (a1 - a0) t.
InnerPathSpec makeBlaschkeLineSpec(const Complex& a0, const Complex& a1,
                                   int tCount, int D = 64);

/// Scalar path with rotating zero a(t) = rho * e^{2 pi i t}.
InnerPathSpec makeBlaschkeCircleSpec(double rho, int tCount, int D = 64);

/// Constant path generated by z * I_n (kills degree zero).
InnerPathSpec makeShiftedSpec(int n, int tCount, int D = 64);

}  // namespace hardylift
