#pragma once

// Parameterized Atiyah prolongation of differential modules.
//
// At1(M) has basis (f-bar block, e (x) w_t1 block, ..., e (x) w_tq block).
// Each principal connection matrix is block lower triangular: the diagonal
// blocks repeat A, block (j, 0) is B_j = -d_tj(A) - A_[d, d_tj].

#include <string>

#include "diffalg/conn.hpp"

namespace diffalg {

class RestrictionFails : public Error {
 public:
  RestrictionFails() : Error("connection does not preserve the symmetric subspace") {}
};

class ShapeMismatch : public Error {
 public:
  explicit ShapeMismatch(const std::string& what) : Error("shape mismatch: " + what) {}
};

/// B-block for principal derivation i and parameter j, read off a full
/// structure whose first p basis elements are principal.  The bracket term
/// is expanded in the principal directions; StructureMismatch if the bracket
/// leaves them.
Matrix prolongation_block(const DiffStructure& full, std::size_t p, const std::vector<Matrix>& conn, std::size_t i,
                          std::size_t j);

struct ProlongedModule {
  DiffModule core;       // rank m(1+q)
  std::size_t parent_rank = 0;
  std::size_t q = 0;
  Matrix incl;           // m(1+q) x mq: Omega_k (x) M -> At1(M)
  Matrix proj;           // m x m(1+q): At1(M) -> M

  /// Block (j+1, 0) of the i-th connection matrix.
  Matrix block(std::size_t i, std::size_t j) const;
};

/// q copies of M, the connection on Omega_k (x) M in the basis e (x) w_tj.
DiffModule parameter_forms(const DiffModule& m);

/// Throws NotFlat.
ProlongedModule prolong_module(const DiffModule& m);

/// Diagonal blocks T, first block column -d_tj(T).  Throws MorphismInvalid.
ModMorphism prolong_morphism(const ModMorphism& t);

struct At2Module {
  DiffModule core;    // restricted connection, rank m(1 + q + q(q+1)/2)
  DiffModule doubled; // At1(At1(M))
  Matrix sigma;       // swap of the two parameter slots
  Matrix incl;        // basis of the sigma-invariant subspace
};

/// Throws NotFlat, RestrictionFails.
At2Module at2_module(const DiffModule& m);

/// Extension of Q by S: connection [[A_Q, 0], [X, A_S]], quotient block first.
struct Extension {
  DiffModule module;
  std::size_t quotient_rank = 0;
  std::size_t sub_rank = 0;
};

Extension make_extension(const DiffModule& quotient, const DiffModule& sub, const std::vector<Matrix>& off);
std::vector<Matrix> off_blocks(const Extension& e);
/// Throws ShapeMismatch when the sub or quotient data differ.
Extension baer_sum(const Extension& a, const Extension& b);

/// B-blocks of At1(M (x) N) against B(M) (x) I + I (x) B(N).  Throws StructureMismatch, NotFlat.
bool check_tensor_compat(const DiffModule& m, const DiffModule& n);

struct ClosureEntry {
  std::string label;
  DiffModule module;
  unsigned prolongations = 0;
};

struct Closure {
  std::vector<ClosureEntry> entries;
  bool truncated = false;
};

struct ClosureLimits {
  unsigned depth = 1;
  std::size_t rank_cap = 8;
  unsigned max_rounds = 2;
  std::size_t max_entries = 64;
};

/// Breadth-first closure of {M} under dual, tensor, direct sum and At1.
/// Throws NotFlat.
Closure generate_closure(const DiffModule& m, const ClosureLimits& limits);

}  // namespace diffalg
