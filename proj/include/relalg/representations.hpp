#ifndef RELALG_REPRESENTATIONS_HPP
#define RELALG_REPRESENTATIONS_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "relalg/algebra.hpp"

namespace relalg {

  // A k x k matrix of atoms, row-major.
  struct BasicMatrix {
    std::size_t       k = 0;
    std::vector<Atom> entries;

    BasicMatrix() = default;
    explicit BasicMatrix(std::size_t dim, Atom fill = 0)
        : k(dim), entries(dim * dim, fill) {}

    Atom  at(std::size_t i, std::size_t j) const { return entries[i * k + j]; }
    Atom& at(std::size_t i, std::size_t j) { return entries[i * k + j]; }

    friend bool operator==(BasicMatrix const&, BasicMatrix const&) = default;
    friend auto operator<=>(BasicMatrix const&, BasicMatrix const&) = default;
  };

  // First violated condition among B0 (diagonal below 1'), B1 (converse
  // symmetry) and B2 (every triangle is a cycle), if any.
  std::optional<std::string> basic_matrix_violation(FiniteAlgebra const& alg,
                                                    BasicMatrix const&   m);
  // Off-diagonal entries are diversity atoms.
  bool satisfies_identity_condition(FiniteAlgebra const& alg,
                                    BasicMatrix const&   m);

  // All k x k basic matrices, in lexicographic order of their entries.
  std::vector<BasicMatrix> enumerate_basic_matrices(FiniteAlgebra const& alg,
                                                    std::size_t          k,
                                                    bool identity_condition);

  // Z_x and the choice function f for a flexible trio (a, b, c).
  class TrioFiller {
   public:
    // Throws Error unless (a, b, c) is a flexible trio of a symmetric
    // integral algebra.
    TrioFiller(FiniteAlgebra const& alg, std::array<Atom, 3> trio);

    std::array<Atom, 3> const& trio() const noexcept { return _trio; }
    // The members t of the trio with x;t >= 0'.
    std::vector<Atom> const& Z(Atom x) const { return _z.at(x); }
    // a if a is in both Z_x and Z_y, else b if b is, else c.
    Atom f(Atom x, Atom y) const;

   private:
    std::array<Atom, 3>            _trio{};
    std::vector<std::vector<Atom>> _z;
  };

  // One-point extension of m at the edge (i, j) through a new point k with
  // m'(i, k) = x, m'(k, j) = y and every other m'(l, k) = f(x, y). Requires
  // the identity condition, i != j, diversity atoms x, y and m(i, j) <= x;y.
  BasicMatrix trio_extend(FiniteAlgebra const& alg,
                          BasicMatrix const&   m,
                          std::size_t          i,
                          std::size_t          j,
                          Atom                 x,
                          Atom                 y,
                          TrioFiller const&    filler);

  // An atom-labeled complete graph; label(i, i) is an identity atom and
  // label(i, j) is the converse of label(j, i).
  struct EdgeLabeling {
    std::size_t       n = 0;
    std::vector<Atom> label;

    Atom at(std::size_t i, std::size_t j) const { return label[i * n + j]; }

    friend bool operator==(EdgeLabeling const&, EdgeLabeling const&) = default;
  };

  // Throws Error naming the first bad entry.
  void validate_labeling(FiniteAlgebra const& alg, EdgeLabeling const& lab);

  // A pair of atoms (x, y) with label(i, j) <= x;y and no k completing it.
  struct Defect {
    std::size_t i, j;
    Atom        x, y;

    friend bool operator==(Defect const&, Defect const&) = default;
  };

  struct BuiltRepresentation {
    EdgeLabeling labeling;
    // Index of the first point added in each round; round_start[0] is the
    // number of seed points.
    std::vector<std::size_t> round_start;
    std::size_t              rounds_run = 0;
    bool                     budget_hit = false;
    // Unwitnessed diversity pairs over the final labeling, oldest edge first.
    std::vector<Defect> defects;
  };

  // Grows a labeling by trio extensions. Seeds points 0 and 1 on the first
  // diversity atom and extends until every atom labels an edge, then runs
  // round-robin rounds: each round walks the edges among the points present
  // when it starts, oldest first, and adds a point for every pair of atoms
  // still unwitnessed there. Stops after the given number of rounds or when
  // the point budget is reached. Throws Error "no flexible trio" when
  // find_flexible reports none.
  BuiltRepresentation build_representation(FiniteAlgebra const& alg,
                                           std::size_t          points,
                                           std::size_t          rounds);
  BuiltRepresentation build_representation(FiniteAlgebra const& alg,
                                           std::array<Atom, 3>  trio,
                                           std::size_t          points,
                                           std::size_t          rounds);

  struct RepresentationReport {
    bool sound     = false;
    bool saturated = false;
    bool surjective = false;
    // (i, j, k) with label(i, j) not below label(i, k);label(k, j).
    std::optional<std::array<std::size_t, 3>> unsound;
    std::optional<Defect>                     unwitnessed;
    std::optional<Atom>                       missing_atom;

    bool holds() const noexcept { return sound && saturated && surjective; }
  };

  // Soundness over all triples, witness saturation over all i != j and
  // atoms x, y, and surjectivity onto the atoms. All three make the labeling
  // a complete square representation of the finite algebra.
  RepresentationReport verify_representation(FiniteAlgebra const& alg,
                                             EdgeLabeling const&  lab);

  // Diversity pairs of the labeling with no witness, ordered by (i, j, x, y).
  std::vector<Defect> find_defects(FiniteAlgebra const& alg,
                                   EdgeLabeling const&  lab);

  struct CyclicLabeling {
    // Atoms "1'", "c0", "c1", ... where c_t is the t-th residue class.
    FiniteAlgebra algebra;
    EdgeLabeling  labeling;
  };

  // label(i, j) = class of j - i mod m. The algebra has a cycle (X, Y, Z)
  // whenever x + y lies in Z for some x in X, y in Y. Classes must be
  // disjoint, negation-closed and cover 1..m-1.
  CyclicLabeling
  cyclic_group_labeling(int m, std::vector<std::vector<int>> const& classes);

  // Renames the atoms of a labeling: atom a becomes map[a].
  EdgeLabeling relabel(EdgeLabeling const& lab, std::vector<Atom> const& map);

  // For an embedding whose images are single atoms (an isomorphism), the
  // atom map dst -> src. Throws Error otherwise.
  std::vector<Atom> inverse_atom_map(std::vector<AtomSet> const& image);

  // Searches colorings of the edges of K_n by colors 1..c avoiding the
  // forbidden triangles, given as color multisets (sorted triples). With no
  // forbidden list every monochrome triangle is forbidden and colors are
  // introduced in order (the first edge gets color 1). The result is an
  // EdgeLabeling with diagonal 0, so it reads as a labeling over atoms
  // 1', e1, ..., ec of the corresponding E23 algebra. None means no such
  // coloring exists.
  std::optional<EdgeLabeling> mono_free_search(
      int c, std::size_t n,
      std::optional<std::vector<std::array<int, 3>>> const& forbidden = {});

}  // namespace relalg

#endif  // RELALG_REPRESENTATIONS_HPP
