#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "twinfinder/clone_detect.hpp"
#include "twinfinder/slicer.hpp"

namespace twinfinder {

enum class SymbolRole { Index, Bound, LengthOf, PointerBase, Scalar };

const char* to_string(SymbolRole role);

/// A pointer-related variable as it appears in constraints. LengthOf symbols
/// are synthesized bound terms: `length_depth` stars over the target pointer
/// (depth 0 renders as length(p), depth 1 as length(*p), ...).
struct SymbolicVar {
  int sid = -1;
  std::string origin;  // identifier path, or the target path for LengthOf
  SymbolRole role = SymbolRole::Scalar;
  int length_depth = 0;        // meaningful for LengthOf
  int fragment_id = -1;
  int order = 0;               // first-use rank within the fragment
  SourceLocation first_use;    // subscript position for Index symbols
  int index_depth = 0;         // meaningful for Index: subscript depth on the target
};

/// A single linear guard in canonical form: sum(coeff_i * x_i) OP k with
/// OP in {<, =}. Extraction produces the full relational set; simplify
/// rewrites everything into this shape over the integers.
struct LinearAtom {
  enum class Op { Less, LessEq, Eq, GreaterEq, Greater };

  std::map<int, long long> coeffs;  // sid -> coefficient, no zero entries
  Op op = Op::Less;
  long long constant = 0;  // right-hand side

  auto operator<=>(const LinearAtom&) const = default;
};

/// A guard that mentions symbolic variables but is not linear over them
/// (array elements, unknown calls, boolean structure). Compared only
/// syntactically after variable renaming; `text` holds `$sid` placeholders.
struct OpaqueAtom {
  std::string text;
  std::vector<int> sids;

  auto operator<=>(const OpaqueAtom&) const = default;
};

using Atom = std::variant<LinearAtom, OpaqueAtom>;

struct PathCondition {
  std::vector<Atom> atoms;  // conjunction, basic-block order
  int path_id = 0;
};

/// Union of per-path conjunctions. Contains no paths when the fragment has
/// no guards over symbolic variables (trivially satisfied).
struct ConstraintSet {
  std::vector<PathCondition> paths;
  std::vector<SymbolicVar> symbols;  // indexed by sid
  int fragment_id = -1;

  bool trivially_true() const { return paths.empty(); }
};

struct VarMatching {
  std::vector<std::pair<int, int>> pairs;  // (sid in a, sid in b)

  std::optional<int> a_for_b(int b_sid) const;
  std::optional<int> b_for_a(int a_sid) const;
  VarMatching inverted() const;
};

enum class Verdict { Equivalent, Different, Unknown };

const char* to_string(Verdict verdict);

struct VerifierConfig {
  int path_cap = 64;
  long long domain_min = -8;
  long long domain_max = 8;
  int max_brute_vars = 6;
};

/// One guard along an execution path.
struct GuardedBlock {
  const AstNode* guard = nullptr;   // condition expression
  bool negated = false;             // branch-not-taken polarity
  const AstNode* switch_expr = nullptr;  // set for case arms
  std::string case_label;
};

using ExecutionPath = std::vector<GuardedBlock>;

/// One guarded block per loop (no unrolling); if/else forks; one path per
/// switch arm. Throws PathExplosion beyond config.path_cap.
std::vector<ExecutionPath> enumerate_paths(const SliceFragment& fragment,
                                           const VerifierConfig& config = {});

ConstraintSet extract_constraints(const SliceFragment& fragment,
                                  const PointerRelatedVars& related,
                                  const VerifierConfig& config = {});

/// Role-based bijection: target pointers match each other, length terms
/// match at equal depth, index variables in order of first subscript
/// position, bounds and scalars in first-use order.
VarMatching match_variables(const ConstraintSet& a, const ConstraintSet& b,
                            const PointerRelatedVars& rel_a, const PointerRelatedVars& rel_b);

/// Canonical form per atom plus duplicate and subsumption removal; the
/// output is logically equivalent to the input over the integers.
ConstraintSet simplify(const ConstraintSet& s);

/// Canonical syntactic set equality first, then a bounded falsification
/// search over config's integer domain. Unmatched variables occurring in
/// atoms force Different.
Verdict check_equivalence(const ConstraintSet& a, const ConstraintSet& b, const VarMatching& m,
                          const VerifierConfig& config = {},
                          std::map<std::string, long long>* witness = nullptr);

struct BruteForceResult {
  bool equivalent_on_domain = false;
  std::map<std::string, long long> counterexample;  // empty when equivalent
};

/// Independent oracle: exhaustively evaluates both raw constraint sets over
/// domain^n. Throws OracleTooLarge beyond `max_vars` variables and refuses
/// opaque atoms.
BruteForceResult brute_force_equiv(const ConstraintSet& a, const ConstraintSet& b,
                                   const VarMatching& m, long long domain_min = -8,
                                   long long domain_max = 8, int max_vars = 6);

/// Recursive sampling inside one cluster: seeded centers with one
/// nearest-center refinement, then medoid + boundary member per group; all
/// cross pairs of the selected samples, deduplicated.
std::vector<std::pair<int, int>> sample_cluster(const CloneCluster& cluster,
                                                const std::vector<FeatureVector>& vectors,
                                                int k, std::uint64_t seed);

std::string to_text(const Atom& atom, const ConstraintSet& owner);

}  // namespace twinfinder
