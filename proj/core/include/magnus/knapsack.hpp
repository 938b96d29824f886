#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "magnus/group_spec.hpp"
#include "magnus/oracle.hpp"
#include "magnus/words.hpp"

namespace magnus {

using BitVector = std::vector<int>;

// g = g_1^e_1 ... g_k^e_k with e_i in {0,1}.
struct SspInstance {
  GroupSpec group;
  std::vector<Word> generators;
  Word target;
};

// A e = (1,...,1) over {0,1}; matrix is k rows by m columns.
struct ZoeInstance {
  std::vector<std::vector<int>> matrix;

  void validate() const;
  std::size_t rows() const { return matrix.size(); }
  std::size_t columns() const { return matrix.empty() ? 0 : matrix.front().size(); }
};

// Acyclic digraph with word-labeled edges; is there a source->sink path
// whose label equals the target?
struct AgpInstance {
  struct LabeledEdge {
    std::size_t from;
    std::size_t to;
    Word label;
  };
  std::size_t vertices = 0;
  std::vector<LabeledEdge> edges;
  std::size_t source = 0;
  std::size_t sink = 0;
  Word target;
  // Optional group carried by the instance file.
  std::optional<GroupSpec> group;

  void validate() const;
};

inline constexpr std::size_t default_subset_cap = 20;
inline constexpr std::size_t default_path_cap = 1'000'000;

// Solutions are searched in increasing order of sum_i e_i 2^(i-1), so
// (1,0) comes before (0,1). Both solvers throw CapExceeded above the cap.
std::optional<BitVector> ssp_solve_brute(const GroupOracle& oracle, const std::vector<Word>& generators,
                                         const Word& target, std::size_t cap = default_subset_cap);
std::optional<BitVector> ssp_solve_brute(const SspInstance& inst, std::size_t cap = default_subset_cap);
std::optional<BitVector> zoe_solve_brute(const ZoeInstance& z, std::size_t cap = default_subset_cap);

// Independent elements h_i = c_i u c_i^-1 of N/N' in the free metabelian group,
// with u = [x1,x2] and c_i = x1^(9(i-1)).
struct CommutatorBasis {
  Word relator;
  std::int64_t spacing = 0;
  std::vector<Word> conjugators;
  std::vector<Word> elements;
};
CommutatorBasis commutator_basis(std::size_t count);

// Column j becomes g_j = prod_i h_i^A_ij and the target is prod_i h_i, over
// the free metabelian group of the given rank.
SspInstance zoe_to_ssp(const ZoeInstance& z, int rank);

// Edge indices of the first source->sink path (depth-first, edges in input
// order) whose label equals the target.
std::optional<std::vector<std::size_t>> agp_solve_brute(const AgpInstance& inst, const GroupOracle& oracle,
                                                        std::size_t cap = default_path_cap);

}  // namespace magnus
