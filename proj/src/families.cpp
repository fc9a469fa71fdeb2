#include "relalg/families.hpp"

#include <algorithm>
#include <set>

namespace relalg {

  FiniteAlgebra build_e23(int q) {
    if (q < 4) {
      throw Error("build_e23: q must be at least 4, got " + std::to_string(q));
    }
    auto const               n = static_cast<std::size_t>(q);
    std::vector<std::string> names{"1'"};
    for (std::size_t i = 1; i < n; ++i) {
      names.push_back("e" + std::to_string(i));
    }
    AtomSet identity(n);
    identity.insert(0);
    std::vector<Atom> converse(n);
    for (Atom x = 0; x < n; ++x) {
      converse[x] = x;
    }
    std::vector<Triple> cycles{{0, 0, 0}};
    for (Atom x = 1; x < n; ++x) {
      cycles.push_back({0, x, x});
      for (Atom y = 1; y < n; ++y) {
        for (Atom z = 1; z < n; ++z) {
          if (!(x == y && y == z)) {
            cycles.push_back({x, y, z});
          }
        }
      }
    }
    return FiniteAlgebra(AtomStructure::from_indices(
        "E23_" + std::to_string(q), names, identity, converse, cycles));
  }

  SplitSpec
  SplitSpec::make(FiniteAlgebra                                           base,
                  std::vector<std::pair<std::string, std::size_t>> const& mult) {
    SplitSpec spec{std::move(base), {}};
    spec.multiplicity.assign(spec.base.size(), 1);
    for (auto const& [name, m] : mult) {
      spec.multiplicity[spec.base.index(name)] = m;
    }
    return spec;
  }

  SplitAlgebra split_algebra(SplitSpec const& spec) {
    auto const& base = spec.base;
    if (!base.is_symmetric() || !base.is_integral()) {
      throw Error("split_algebra: base must be symmetric and integral");
    }
    if (spec.multiplicity.size() != base.size()) {
      throw Error("split_algebra: one multiplicity per atom required");
    }
    std::vector<std::string> names;
    std::vector<Atom>        cover;
    for (Atom a = 0; a < base.size(); ++a) {
      auto m = spec.multiplicity[a];
      if (m == 0) {
        throw Error("split_algebra: multiplicity of " + base.atom_name(a)
                    + " must be positive");
      }
      if (base.identity().contains(a) && m != 1) {
        throw Error("split_algebra: the identity atom cannot be split");
      }
      for (std::size_t p = 1; p <= m; ++p) {
        names.push_back(m == 1 ? base.atom_name(a)
                               : base.atom_name(a) + "_" + std::to_string(p));
        cover.push_back(a);
      }
    }
    auto const n = names.size();
    AtomSet    identity(n);
    for (Atom x = 0; x < n; ++x) {
      if (base.identity().contains(cover[x])) {
        identity.insert(x);
      }
    }
    std::vector<Atom> converse(n);
    for (Atom x = 0; x < n; ++x) {
      converse[x] = x;
    }
    // Diversity cycles of the split are exactly the triples of pieces whose
    // covers form a cycle of the base; 1' is only in x;x.
    std::vector<Triple> cycles;
    for (Atom x = 0; x < n; ++x) {
      for (Atom y = 0; y < n; ++y) {
        for (Atom z = 0; z < n; ++z) {
          bool const ix = identity.contains(x), iy = identity.contains(y),
                     iz = identity.contains(z);
          bool ok       = false;
          if (ix || iy || iz) {
            ok = (ix && y == z) || (iy && x == z) || (iz && x == y);
          } else {
            ok = base.structure().has_cycle(cover[x], cover[y], cover[z]);
          }
          if (ok) {
            cycles.push_back({x, y, z});
          }
        }
      }
    }
    std::string name = base.name() + "/split";
    SplitAlgebra out{FiniteAlgebra(AtomStructure::from_indices(
                         name, names, identity, converse, cycles,
                         CycleInput::strict)),
                     std::move(cover),
                     {},
                     base};
    return out;
  }

  SplitAlgebra build_monk(int q, std::vector<std::size_t> const& multiplicity) {
    auto e23 = build_e23(q);
    if (multiplicity.size() != static_cast<std::size_t>(q - 1)) {
      throw Error("build_monk: expected " + std::to_string(q - 1)
                  + " multiplicities, got "
                  + std::to_string(multiplicity.size()));
    }
    SplitSpec spec{e23, {1}};
    spec.multiplicity.insert(
        spec.multiplicity.end(), multiplicity.begin(), multiplicity.end());
    auto out = split_algebra(spec);
    std::string name = "Monk_" + std::to_string(q) + "(";
    for (std::size_t i = 0; i < multiplicity.size(); ++i) {
      name += (i ? "," : "") + std::to_string(multiplicity[i]);
    }
    name += ")";
    auto s = out.algebra.structure();
    s.set_name(name);
    out.algebra = FiniteAlgebra(std::move(s));
    for (Atom a : e23.diversity_atoms()) {
      out.colors.push_back(e23.atom_name(a));
    }
    return out;
  }

  PartitionSubalg::PartitionSubalg(FiniteAlgebra parent,
                                   std::vector<AtomSet> blocks)
      : _parent(std::move(parent)), _blocks(std::move(blocks)) {
    auto const n = _parent.size();
    _cover.assign(n, npos);
    AtomSet seen(n);
    for (std::size_t b = 0; b < _blocks.size(); ++b) {
      auto const& blk = _blocks[b];
      if (blk.universe() != n || blk.empty()) {
        throw Error("partition: empty block");
      }
      if (blk.intersects(seen)) {
        throw Error("partition: blocks overlap at "
                    + _parent.format(blk & seen));
      }
      if (blk.intersects(_parent.identity())) {
        throw Error("partition: a block contains an identity atom");
      }
      seen |= blk;
      blk.for_each([&](Atom x) { _cover[x] = b; });
    }
    if (seen != _parent.diversity()) {
      throw Error("partition: blocks miss diversity atoms "
                  + _parent.format(_parent.diversity() - seen));
    }
    auto const& id = _parent.identity();
    auto is_union = [&](AtomSet const& e) {
      auto ide = e & id;
      if (!ide.empty() && ide != id) {
        return false;
      }
      for (auto const& blk : _blocks) {
        if (blk.intersects(e) && !blk.is_subset_of(e)) {
          return false;
        }
      }
      return true;
    };
    for (std::size_t a = 0; a < _blocks.size(); ++a) {
      if (!is_union(_parent.converse(_blocks[a]))) {
        throw Error("partition: blocks not a subalgebra (converse of "
                    + block_name(a) + ")");
      }
      for (std::size_t b = 0; b < _blocks.size(); ++b) {
        if (!is_union(_parent.compose(_blocks[a], _blocks[b]))) {
          throw Error("partition: blocks not a subalgebra (" + block_name(a)
                      + ";" + block_name(b) + " is not a union of blocks)");
        }
      }
    }
  }

  std::vector<std::vector<std::string>> PartitionSubalg::block_names() const {
    std::vector<std::vector<std::string>> out;
    for (auto const& b : _blocks) {
      std::vector<std::string> names;
      b.for_each([&](Atom x) { names.push_back(_parent.atom_name(x)); });
      out.push_back(std::move(names));
    }
    return out;
  }

  FiniteAlgebra PartitionSubalg::quotient() const {
    std::vector<AtomSet> gens(_blocks.begin(), _blocks.end());
    return generate_subalgebra(_parent, gens).algebra;
  }

  PartitionSubalg
  make_partition(FiniteAlgebra const&                         parent,
                 std::vector<std::vector<std::string>> const& blocks) {
    std::vector<AtomSet> sets;
    for (auto const& b : blocks) {
      sets.push_back(parent.element(b));
    }
    return PartitionSubalg(parent, std::move(sets));
  }

  PartitionSubalg singleton_partition(FiniteAlgebra const& alg) {
    std::vector<AtomSet> blocks;
    for (Atom x : alg.diversity_atoms()) {
      blocks.push_back(alg.atom(x));
    }
    return PartitionSubalg(alg, std::move(blocks));
  }

  PartitionSubalg minimal_partition(FiniteAlgebra const& alg) {
    return PartitionSubalg(alg, {alg.diversity()});
  }

  PartitionSubalg e23_subalgebra(int q, int alpha, int beta) {
    if (!(alpha >= 0 && beta >= 0 && alpha + 2 * beta < q && alpha + beta > 0)) {
      throw Error("e23_subalgebra: need alpha+2*beta < q and alpha+beta > 0");
    }
    if (beta == 0 && alpha != q - 1) {
      throw Error("e23_subalgebra: with beta = 0 every diversity atom is a "
                  "singleton block, so alpha must equal q-1");
    }
    auto                 e23 = build_e23(q);
    std::vector<AtomSet> blocks;
    Atom                 next = 1;
    for (int i = 0; i < alpha; ++i) {
      blocks.push_back(e23.atom(next++));
    }
    auto const n = static_cast<Atom>(q);
    for (int j = 0; j < beta; ++j) {
      AtomSet blk(n);
      Atom    stop = (j + 1 == beta) ? n : next + 2;
      for (; next < stop; ++next) {
        blk.insert(next);
      }
      blocks.push_back(std::move(blk));
    }
    return PartitionSubalg(std::move(e23), std::move(blocks));
  }

  std::vector<std::pair<int, int>> e23_subalgebra_parameters(int q) {
    std::vector<std::pair<int, int>> out;
    for (int alpha = 0; alpha < q; ++alpha) {
      for (int beta = 0; alpha + 2 * beta < q; ++beta) {
        if (alpha + beta == 0 || (beta == 0 && alpha != q - 1)) {
          continue;
        }
        out.emplace_back(alpha, beta);
      }
    }
    return out;
  }

  PartitionSubalg lift_partition(SplitAlgebra const&    split,
                                 PartitionSubalg const& over_base) {
    if (!(over_base.parent() == split.base)) {
      throw Error("lift_partition: partition is over a different base");
    }
    auto const&          A = split.algebra;
    std::vector<AtomSet> blocks(over_base.block_count(), AtomSet(A.size()));
    for (Atom x : A.diversity_atoms()) {
      blocks[over_base.block_of(split.cover[x])].insert(x);
    }
    return PartitionSubalg(A, std::move(blocks));
  }

  SpecialExtensionResult check_special_extension(FiniteAlgebra const&   A,
                                                 PartitionSubalg const& E) {
    if (!(E.parent() == A)) {
      throw Error("check_special_extension: partition is over another algebra");
    }
    auto const& blocks = E.blocks();
    auto const  k      = blocks.size();
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) {
        auto const ab = A.compose(blocks[a], blocks[b]);
        for (std::size_t c = 0; c < k; ++c) {
          if ((a == b && b == c) || !blocks[c].is_subset_of(ab)) {
            continue;
          }
          for (Atom x : blocks[a].members()) {
            for (Atom y : blocks[b].members()) {
              if (!blocks[c].is_subset_of(A.product(x, y))) {
                return {false, SpecialExtensionWitness{1, a, b, c, x, y}};
              }
            }
          }
        }
      }
    }
    for (std::size_t a = 0; a < k; ++a) {
      if (!blocks[a].is_subset_of(A.compose(blocks[a], blocks[a]))) {
        continue;
      }
      for (Atom x : blocks[a].members()) {
        for (Atom y : blocks[a].members()) {
          if (!A.product(x, y).intersects(blocks[a])) {
            return {false, SpecialExtensionWitness{2, a, a, a, x, y}};
          }
        }
      }
    }
    return {true, std::nullopt};
  }

  bool is_flexible_atom(FiniteAlgebra const& alg, Atom a) {
    auto const div = alg.diversity();
    if (!div.contains(a) || alg.product(a, a) != alg.top()) {
      return false;
    }
    for (Atom x : div.members()) {
      if (x != a && alg.product(x, a) != div) {
        return false;
      }
    }
    return true;
  }

  bool is_flexible_trio(FiniteAlgebra const& alg, Atom a, Atom b, Atom c) {
    auto const div = alg.diversity();
    if (!div.contains(a) || !div.contains(b) || !div.contains(c) || a == b
        || a == c || b == c) {
      return false;
    }
    auto const top = alg.top();
    if (alg.product(a, a) != top || alg.product(b, b) != top
        || alg.product(c, c) != top) {
      return false;
    }
    if (alg.product(a, b) != div || alg.product(a, c) != div
        || alg.product(b, c) != div) {
      return false;
    }
    for (Atom x : div.members()) {
      if (x == a || x == b || x == c) {
        continue;
      }
      bool const xa = alg.product(x, a) == div;
      bool const xb = alg.product(x, b) == div;
      bool const xc = alg.product(x, c) == div;
      if (!((xa && xb) || (xa && xc) || (xb && xc))) {
        return false;
      }
    }
    return true;
  }

  FlexibleReport find_flexible(FiniteAlgebra const& alg) {
    if (!alg.is_symmetric() || !alg.is_integral()) {
      throw Error("find_flexible: algebra must be symmetric and integral");
    }
    FlexibleReport r;
    auto const     div = alg.diversity_atoms();
    for (Atom a : div) {
      if (is_flexible_atom(alg, a)) {
        r.flexible.push_back(a);
      }
    }
    for (std::size_t i = 0; i < div.size(); ++i) {
      for (std::size_t j = i + 1; j < div.size(); ++j) {
        for (std::size_t l = j + 1; l < div.size(); ++l) {
          if (is_flexible_trio(alg, div[i], div[j], div[l])) {
            r.trios.push_back({div[i], div[j], div[l]});
          }
        }
      }
    }
    return r;
  }

}  // namespace relalg
