#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qrs/numerics.hpp"

namespace qrs {

// Dense-verifiable matrix with an optional structure hint. Toeplitz kinds
// carry the diagonal function f(delta); coulomb3d is the kernel
// A_ii = 1, A_ij = 1/||i-j||^2 on the point grid [0, 2^nu]^3 (the difference
// index delta = i-j then ranges over [-2^nu, 2^nu]^3).
struct MatrixSpec {
    enum class Structure { Dense, Toeplitz1d, Toeplitz3d, Coulomb3d };

    Structure structure = Structure::Dense;
    std::size_t n = 0;            // dimension
    std::vector<cplx> entries;    // row-major dense entries
    // Toeplitz1d: f over delta in [-(n-1), n-1], stored at offset delta+n-1
    std::vector<double> toeplitz_magnitude;
    std::vector<double> toeplitz_phase;
    int nu = 0;                   // Coulomb3d / Toeplitz3d
    int side = 0;                 // Toeplitz3d points per axis

    static MatrixSpec dense(std::size_t n, std::vector<cplx> entries);
    static MatrixSpec toeplitz_1d(std::size_t n, std::vector<double> magnitude,
                                  std::vector<double> phase = {});
    static MatrixSpec coulomb_3d(int nu);

    cplx at(std::size_t i, std::size_t j) const;
    double magnitude_at(std::size_t i, std::size_t j) const;
};

// Access model. Explicit-sampling kinds carry an elementwise reference G;
// lcu kinds work in the delta index space of a Toeplitz matrix.
struct BlockModel {
    enum class Kind { LcuImplicit, LcuExplicit, Ziggurat, RowColumn, Column };

    Kind kind = Kind::LcuImplicit;
    std::vector<double> g_over_delta; // LcuExplicit (1d): g(delta), same layout as toeplitz_magnitude
    std::vector<double> g_dense;      // RowColumn / Column: row-major G
    std::uint64_t m = 0;              // 0 = derive from eps in build()
    bool zig_single = false;          // one submatrix covering the support

    static BlockModel lcu_implicit();
    static BlockModel lcu_explicit(std::vector<double> g_over_delta = {});
    static BlockModel ziggurat();        // max-norm shell partition over the support
    static BlockModel ziggurat_single(); // sparse-access special case
    static BlockModel row_column(std::vector<double> g_dense = {});
    static BlockModel column(std::vector<double> g_dense = {});
};

struct BlockEncodingResult {
    double alpha = 0.0;
    std::vector<cplx> effective; // row-major, holds Abar/alpha
    std::size_t n = 0;
    double op_error = 0.0;       // ||Abar - A|| / alpha
    std::uint64_t m = 0;
    int bits = 0;
    std::string model_name;
};

/// Closed-form rescaling factor of the model on this matrix.
double rescale_factor(const BlockModel& model, const MatrixSpec& a);

/// Assembles the effective block <0|U|0> = Abar/alpha and verifies it.
BlockEncodingResult build(const BlockModel& model, const MatrixSpec& a, double eps);

/// Spectral norm of (Abar - A)/alpha by power iteration on the Gram matrix.
double verify(const BlockEncodingResult& res, const MatrixSpec& a);

/// Top singular value of a dense matrix (same power iteration).
double operator_norm(const std::vector<cplx>& mat, std::size_t n);

struct CoulombAlphas {
    double alpha_f = 0.0;   // PREP-SEL-PREP over the shell ziggurat in delta
    double alpha_zig = 0.0; // hierarchical submatrix partition
    double alpha_rc = 0.0;  // row-column
    double alpha_c = 0.0;   // column
};

/// Closed forms of the Coulomb-kernel rescaling factors at N^{1/3} = 2^nu.
CoulombAlphas coulomb_alphas(int nu);

/// Hadamard-product identity residual max_ij |sum_k chi phi / (Nchi Nphi) - G_ij/alpha|.
double model_identity_residual(const BlockModel& model, const MatrixSpec& a);

/// Row-major little-endian binary dump of the effective block + JSON sidecar.
void export_effective(const BlockEncodingResult& res, const std::string& path);

} // namespace qrs
