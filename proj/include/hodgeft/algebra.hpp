#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hodgeft/key.hpp"
#include "hodgeft/rational.hpp"

namespace hodgeft {

using Vec = std::vector<Rat>;
using Mat = std::vector<Vec>; // M[row][col], acting on column vectors

Mat mat_zero(int n);
Mat mat_identity(int n);
Mat mat_mul(const Mat& a, const Mat& b);
Mat mat_add(const Mat& a, const Mat& b);
Mat mat_scale(const Rat& c, const Mat& a);
Vec mat_apply(const Mat& m, const Vec& v);
bool mat_is_zero(const Mat& m);
int mat_rank(Mat m);
Rat mat_det(Mat m);
std::optional<Mat> mat_inverse(const Mat& m);

struct GradedBasis {
    std::vector<std::string> names;
    ParityVec parity; // names.size() entries, unit (index 0) must be even
    int size() const { return static_cast<int>(names.size()); }
};

/// One entry of a sparse symmetric 2-tensor sum B^{ij} e_i (x) e_j.
struct BivTerm {
    int i = 0, j = 0;
    Rat c;
};
using Bivector = std::vector<BivTerm>;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Finite-dimensional Z2-graded algebra with integral and the odd operators
/// Q, G-, G+. Multiplication is stored as sparse structure constants;
/// eta and its inverse are derived on finalize().
class HodgeAlgebra {
  public:
    GradedBasis basis;
    // prod[i][j] = list of (k, c): e_i e_j = sum c e_k
    std::vector<std::vector<std::vector<std::pair<int, Rat>>>> prod;
    Vec integral;
    Mat Q, Gm, Gp;
    int h0_dim = 1;
    std::string name;

    int dim() const { return basis.size(); }

    /// Derives eta and eta_inv, validates shapes. Throws InputError on
    /// dimension mismatch, non-homogeneous operators, or degenerate eta
    /// (degeneracy is only an error for callers that need eta_inv; the
    /// axiom checker reports it as an A7 failure instead).
    void finalize();

    const Mat& eta() const { return eta_; }
    bool eta_invertible() const { return eta_inv_.has_value(); }
    const Mat& eta_inv() const;

    Vec basis_vec(int i) const;
    Vec mul(const Vec& a, const Vec& b) const;
    Rat integrate(const Vec& a) const;
    Rat pair(const Vec& a, const Vec& b) const { return integrate(mul(a, b)); }

    /// Integral of a left-folded product of basis vectors; memoized.
    Rat integrate_word(const std::vector<int>& word) const;

    /// Multiplication operator a * (.) as a matrix.
    Mat mult_operator(const Vec& a) const;

  private:
    struct WordCache {
        std::map<std::vector<int>, Rat> memo;
        std::mutex mutex;
    };

    Mat eta_;
    std::optional<Mat> eta_inv_;
    // fresh cache per finalize(); copies of a finalized algebra share it
    std::shared_ptr<WordCache> words_;
};

struct AxiomCheck {
    std::string name;
    bool pass = true;
    std::string witness; // empty when passing
};

struct AxiomReport {
    std::vector<AxiomCheck> checks; // structural checks then A1..A7
    bool all_pass() const;
    bool passed(const std::string& name) const;
    std::string summary() const;
};

/// Runs the structural checks (unit, parity grading, supercommutativity,
/// associativity, operator parities, evenness of the integral) and A1-A7.
AxiomReport check_axioms(const HodgeAlgebra& a);

Rat supertrace(const Mat& m, const ParityVec& parity);

enum class SymmetryType { Symmetric, Skew };

/// Turns an eta-(skew)symmetric operator A into the bivector
/// [A]^{ij} = sum_k A^i_k (eta^-1)^{kj}. Throws InputError when A has no
/// definite symmetry type or eta is degenerate.
Bivector bivector_of(const Mat& a, const HodgeAlgebra& alg);
SymmetryType symmetry_type(const Mat& a, const HodgeAlgebra& alg);

/// [JA]^{ij} = (-1)^{parity(i)} [A]^{ij}; the sign twist placed on cut edges.
Bivector j_twist(const Bivector& b, const ParityVec& parity);

/// true when M is parity-homogeneous of the given parity (1 = odd).
bool is_homogeneous(const Mat& m, const ParityVec& parity, int op_parity);

} // namespace hodgeft
