#ifndef RELALG_CYLINDRIC_HPP
#define RELALG_CYLINDRIC_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relalg/algebra.hpp"
#include "relalg/representations.hpp"

namespace relalg {

  // mu[i/j](l, m) = mu(s(l), s(m)) where s(i) = j and s fixes everything else.
  BasicMatrix substitute(BasicMatrix const& m, std::size_t i, std::size_t j);

  // Equal off row and column i (resp. rows and columns i and j).
  bool agree_up_to(BasicMatrix const& a, BasicMatrix const& b, std::size_t i);
  bool agree_up_to(BasicMatrix const& a,
                   BasicMatrix const& b,
                   std::size_t        i,
                   std::size_t        j);

  // A set M of k x k basic matrices with the relations T_i ("agree up to i")
  // and the sets E_ij = {mu : mu(i, j) <= 1'}, both derived from entries.
  class MatrixStructure {
   public:
    // Sorts and deduplicates M; throws Error if some member is not basic.
    MatrixStructure(FiniteAlgebra const& alg, std::size_t k,
                    std::vector<BasicMatrix> M);

    std::size_t                     k() const noexcept { return _k; }
    std::size_t                     size() const noexcept { return _M.size(); }
    std::vector<BasicMatrix> const& matrices() const noexcept { return _M; }
    BasicMatrix const& matrix(std::size_t m) const { return _M.at(m); }
    std::optional<std::size_t> find(BasicMatrix const& m) const;

    // T_i-class of matrix m, as an index; members of a class.
    std::size_t class_of(std::size_t i, std::size_t m) const {
      return _class[i][m];
    }
    std::vector<std::size_t> const& members(std::size_t i,
                                            std::size_t cls) const {
      return _members[i][cls];
    }
    bool T(std::size_t i, std::size_t a, std::size_t b) const {
      return _class[i][a] == _class[i][b];
    }
    AtomSet E(std::size_t i, std::size_t j) const;

   private:
    AtomSet                                            _identity;
    std::size_t                                        _k = 0;
    std::vector<BasicMatrix>                           _M;
    std::vector<std::vector<std::size_t>>              _class;
    std::vector<std::vector<std::vector<std::size_t>>> _members;
  };

  struct BasisCheck {
    bool holds = false;
    // Failing condition ("R0", "R1", "C0", "C1", "C2") and its witness.
    std::optional<std::string> condition;
    std::vector<std::size_t>   witness;
    std::string                detail;
  };

  // R0: every atom is some mu(0, 1). R1: for mu in M, i, j < k, atoms x, y
  // with mu(i, j) <= x;y and l distinct from i, j, some mu' in M agrees with
  // mu up to l and has mu'(i, l) = x, mu'(l, j) = y. Witness for R1 is
  // (mu, i, j, x, y, l) with mu an index into the sorted M. Requires k >= 3.
  BasisCheck check_relational_basis(FiniteAlgebra const&            alg,
                                    std::size_t                     k,
                                    std::vector<BasicMatrix> const& M);

  // C0: every cycle a <= b;c appears as mu(0,1), mu(0,2), mu(2,1). C1: if mu
  // and mu' agree up to i, j (i != j), some mu'' agrees with mu up to i and
  // with mu' up to j. C2: M is closed under every substitution [i/j].
  // Requires k >= 3.
  BasisCheck check_cylindric_basis(FiniteAlgebra const&            alg,
                                   std::size_t                     k,
                                   std::vector<BasicMatrix> const& M);

  struct PairProductOptions {
    // Diversity atoms the pairs range over; all diversity atoms if unset.
    std::optional<AtomSet> atoms;
    // Limit on the number of product sets examined.
    std::uint64_t budget = 50'000'000;
    // Above budget: sample instead of failing. Sampled runs are evidence only.
    bool          allow_sampling = false;
    std::uint64_t seed           = 1;
  };

  struct PairProductResult {
    bool          holds = false;
    bool          exhaustive = false;  // false: "evidence" from sampling
    std::uint64_t checked    = 0;      // product sets examined
    std::size_t   distinct_products = 0;
    // Pairs (u, v) whose products have an empty meet.
    std::vector<std::pair<Atom, Atom>> witness;

    std::string mode() const { return exhaustive ? "exhaustive" : "evidence"; }
  };

  // For all n-2 pairs (u_i, v_i) of diversity atoms, is the meet of the
  // products u_i;v_i nonzero? Requires n >= 3. Throws Error when the search
  // exceeds the budget and sampling is not allowed.
  PairProductResult pair_product_condition(FiniteAlgebra const&      alg,
                                           std::size_t               n,
                                           PairProductOptions const& options = {});

  struct CaAxiom {
    std::string              id;  // "C0" .. "C7"
    bool                     holds = true;
    std::vector<std::size_t> witness;  // axiom indices, then matrix indices
  };

  struct CaReport {
    std::vector<CaAxiom> axioms;

    bool holds() const noexcept {
      for (auto const& a : axioms) {
        if (!a.holds) {
          return false;
        }
      }
      return true;
    }
  };

  // Ca(M): the complex algebra of <M, T_i, E_ij>. Elements are subsets of M.
  class CylAlgebra {
   public:
    CylAlgebra(FiniteAlgebra const& alg, std::size_t k,
               std::vector<BasicMatrix> M);

    MatrixStructure const& structure() const noexcept { return _s; }
    std::size_t            dimension() const noexcept { return _s.k(); }
    std::size_t            size() const noexcept { return _s.size(); }

    AtomSet cylindrify(std::size_t i, AtomSet const& x) const;
    AtomSet diagonal(std::size_t i, std::size_t j) const { return _s.E(i, j); }

   private:
    MatrixStructure _s;
  };

  struct BuiltCa {
    CylAlgebra algebra;
    CaReport   report;
  };

  // Builds Ca(M) and checks the cylindric algebra axioms C0-C7 through
  // their relational correspondents, which suffice because every operation
  // is completely additive:
  //   C0 Boolean axioms (hold for any powerset)
  //   C1 c_i 0 = 0
  //   C2 x <= c_i x                       T_i reflexive
  //   C3 c_i(x . c_i y) = c_i x . c_i y   T_i symmetric and transitive
  //   C4 c_i c_j x = c_j c_i x            T_i and T_j commute
  //   C5 d_ii = 1
  //   C6 d_jl = c_i(d_ji . d_il), i not in {j, l}
  //   C7 c_i(d_ij . x) . c_i(d_ij . -x) = 0, i != j: each T_i-class meets
  //      E_ij at most once
  // Throws Error when M is empty or larger than max_matrices.
  BuiltCa build_ca(FiniteAlgebra const&     alg,
                   std::size_t              k,
                   std::vector<BasicMatrix> M,
                   std::size_t              max_matrices = 4096);

}  // namespace relalg

#endif  // RELALG_CYLINDRIC_HPP
