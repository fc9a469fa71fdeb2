#include "relalg/thinned.hpp"

#include <algorithm>

namespace relalg {

  // IndexSet

  IndexSet IndexSet::upto(Index k) {
    IndexSet s;
    for (Index i = 0; i <= k; ++i) {
      s._finite.push_back(i);
    }
    return s;
  }

  void IndexSet::normalize() {
    std::sort(_finite.begin(), _finite.end());
    _finite.erase(std::unique(_finite.begin(), _finite.end()), _finite.end());
    if (_tail) {
      while (!_finite.empty() && _finite.back() >= *_tail) {
        _finite.pop_back();
      }
      while (*_tail > 0 && !_finite.empty() && _finite.back() + 1 == *_tail) {
        _finite.pop_back();
        --*_tail;
      }
    }
  }

  bool IndexSet::contains(Index i) const noexcept {
    if (_tail && i >= *_tail) {
      return true;
    }
    return std::binary_search(_finite.begin(), _finite.end(), i);
  }

  Index IndexSet::min() const {
    if (!_finite.empty()) {
      return _finite.front();
    }
    if (_tail) {
      return *_tail;
    }
    throw Error("IndexSet::min of empty set");
  }

  Index IndexSet::max() const {
    if (_tail || _finite.empty()) {
      throw Error("IndexSet::max of an empty or infinite set");
    }
    return _finite.back();
  }

  IndexSet IndexSet::unite(IndexSet const& other) const {
    IndexSet s;
    s._finite = _finite;
    s._finite.insert(s._finite.end(), other._finite.begin(),
                     other._finite.end());
    if (_tail && other._tail) {
      s._tail = std::min(*_tail, *other._tail);
    } else if (_tail) {
      s._tail = _tail;
    } else {
      s._tail = other._tail;
    }
    s.normalize();
    return s;
  }

  IndexSet IndexSet::intersect(IndexSet const& other) const {
    IndexSet s;
    if (_tail && other._tail) {
      s._tail = std::max(*_tail, *other._tail);
    }
    for (auto const* src : {&_finite, &other._finite}) {
      for (Index i : *src) {
        if (contains(i) && other.contains(i)) {
          s._finite.push_back(i);
        }
      }
    }
    s.normalize();
    return s;
  }

  IndexSet IndexSet::above(Index m) const {
    IndexSet s;
    for (Index i : _finite) {
      if (i > m) {
        s._finite.push_back(i);
      }
    }
    if (_tail) {
      s._tail = std::max(*_tail, m + 1);
    }
    s.normalize();
    return s;
  }

  // TailedElement

  std::vector<std::optional<Index>> TailedElement::tails() const {
    std::vector<std::optional<Index>> out;
    for (auto const& p : _parts) {
      out.push_back(p.tail());
    }
    return out;
  }

  std::vector<std::pair<std::size_t, Index>> TailedElement::sporadic() const {
    std::vector<std::pair<std::size_t, Index>> out;
    for (std::size_t s = 0; s < _parts.size(); ++s) {
      for (Index i : _parts[s].finite()) {
        out.emplace_back(s, i);
      }
    }
    return out;
  }

  bool TailedElement::empty() const noexcept {
    if (_identity) {
      return false;
    }
    for (auto const& p : _parts) {
      if (!p.empty()) {
        return false;
      }
    }
    return true;
  }

  void TailedElement::same_spec(TailedElement const& other) const {
    if (_spec != other._spec || _parts.size() != other._parts.size()) {
      throw Error("tailed elements over different specs");
    }
  }

  bool TailedElement::is_subset_of(TailedElement const& other) const {
    same_spec(other);
    if (_identity && !other._identity) {
      return false;
    }
    for (std::size_t s = 0; s < _parts.size(); ++s) {
      if (!_parts[s].is_subset_of(other._parts[s])) {
        return false;
      }
    }
    return true;
  }

  bool TailedElement::intersects(TailedElement const& other) const {
    return !intersect(other).empty();
  }

  TailedElement TailedElement::unite(TailedElement const& other) const {
    same_spec(other);
    TailedElement out(_spec, _parts.size());
    out._identity = _identity || other._identity;
    for (std::size_t s = 0; s < _parts.size(); ++s) {
      out._parts[s] = _parts[s].unite(other._parts[s]);
    }
    return out;
  }

  TailedElement TailedElement::intersect(TailedElement const& other) const {
    same_spec(other);
    TailedElement out(_spec, _parts.size());
    out._identity = _identity && other._identity;
    for (std::size_t s = 0; s < _parts.size(); ++s) {
      out._parts[s] = _parts[s].intersect(other._parts[s]);
    }
    return out;
  }

  // ThinnedSpec

  namespace {

    std::uint64_t fnv1a(std::string const& s) {
      std::uint64_t h = 0xcbf29ce484222325ULL;
      for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
      }
      return h;
    }

  }  // namespace

  ThinnedSpec::ThinnedSpec(FiniteAlgebra A, PartitionSubalg E) : _E(std::move(E)) {
    if (!(A == _E.parent())) {
      throw Error("thinned spec: partition is over a different algebra");
    }
    if (!A.is_symmetric() || !A.is_integral()) {
      throw Error("thinned spec: A must be symmetric and integral");
    }
    _slots = A.diversity_atoms();
    _slot_of.assign(A.size(), PartitionSubalg::npos);
    for (std::size_t s = 0; s < _slots.size(); ++s) {
      _slot_of[_slots[s]] = s;
    }
    std::string key;
    for (auto const& n : A.structure().atom_names()) {
      key += n + " ";
    }
    for (auto const& t : A.structure().representatives()) {
      key += std::to_string(t[0]) + "," + std::to_string(t[1]) + ","
             + std::to_string(t[2]) + ";";
    }
    for (auto const& b : _E.blocks()) {
      key += "|" + A.format(b);
    }
    _fingerprint = fnv1a(key);
  }

  std::size_t ThinnedSpec::slot_of(Atom x) const {
    if (x >= _slot_of.size() || _slot_of[x] == PartitionSubalg::npos) {
      throw Error("thinned spec: not a diversity atom of A");
    }
    return _slot_of[x];
  }

  TailedElement ThinnedSpec::identity() const {
    auto u = zero();
    u.set_identity(true);
    return u;
  }

  TailedElement ThinnedSpec::atom(Atom x, Index i) const {
    auto u            = zero();
    u.part(slot_of(x)) = IndexSet::single(i);
    return u;
  }

  TailedElement ThinnedSpec::J(AtomSet const& a, Index n) const {
    if (a.universe() != A().size()) {
      throw Error("thinned spec: element from another algebra");
    }
    auto u = zero();
    u.set_identity(a.intersects(A().identity()));
    for (std::size_t s = 0; s < width(); ++s) {
      if (a.contains(_slots[s])) {
        u.part(s) = IndexSet::from(n);
      }
    }
    return u;
  }

  std::string ThinnedSpec::format(TailedElement const& u) const {
    std::vector<std::string> terms;
    if (u.has_identity()) {
      terms.push_back("1'");
    }
    for (std::size_t s = 0; s < width(); ++s) {
      if (auto t = u.part(s).tail()) {
        terms.push_back("J(" + A().atom_name(_slots[s]) + ","
                        + std::to_string(*t) + ")");
      }
    }
    for (auto const& [s, i] : u.sporadic()) {
      terms.push_back(A().atom_name(_slots[s]) + "@" + std::to_string(i));
    }
    if (terms.empty()) {
      return "0";
    }
    std::string out = terms[0];
    for (std::size_t k = 1; k < terms.size(); ++k) {
      out += " + " + terms[k];
    }
    return out;
  }

  // Products

  TailedElement
  atom_product(ThinnedSpec const& spec, Atom x, Index i, Atom y, Index j) {
    auto const& A  = spec.A();
    auto const  sx = spec.slot_of(x);
    auto const  sy = spec.slot_of(y);
    auto const  xy = A.product(x, y);
    auto        u  = spec.zero();

    if (spec.cover(sx) != spec.cover(sy)) {
      return spec.J(xy, 0);
    }
    AtomSet const& block = spec.E().blocks()[spec.cover(sx)];
    // J(0' . -a . x;y, 0)
    auto outside = (xy & A.diversity()) - block;
    outside.for_each([&](Atom z) { u.part(spec.slot_of(z)) = IndexSet::all(); });
    auto inside = xy & block;
    if (i != j) {
      Index const m = std::max(i, j);
      inside.for_each(
          [&](Atom z) { u.part(spec.slot_of(z)) = IndexSet::single(m); });
    } else {
      inside.for_each(
          [&](Atom z) { u.part(spec.slot_of(z)) = IndexSet::upto(i); });
      if (x == y) {
        u.set_identity(true);
      }
    }
    return u;
  }

  TailedElement tailed_product(ThinnedSpec const&   spec,
                               TailedElement const& u,
                               TailedElement const& v) {
    if (u.spec() != spec.fingerprint() || v.spec() != spec.fingerprint()) {
      throw Error("tailed_product: element from another spec");
    }
    auto const& A   = spec.A();
    auto const  w   = spec.width();
    auto        out = spec.zero();

    // 1' is a two-sided unit.
    if (u.has_identity()) {
      out = out.unite(v);
    }
    if (v.has_identity()) {
      out = out.unite(u);
    }
    if (u.has_identity() && v.has_identity()) {
      out.set_identity(true);
    }

    for (std::size_t sx = 0; sx < w; ++sx) {
      IndexSet const& S = u.part(sx);
      if (S.empty()) {
        continue;
      }
      for (std::size_t sy = 0; sy < w; ++sy) {
        IndexSet const& T = v.part(sy);
        if (T.empty()) {
          continue;
        }
        Atom const x  = spec.atom_of(sx);
        Atom const y  = spec.atom_of(sy);
        auto const xy = A.product(x, y);
        if (spec.cover(sx) != spec.cover(sy)) {
          (xy & A.diversity()).for_each([&](Atom z) {
            out.part(spec.slot_of(z)) = IndexSet::all();
          });
          continue;
        }
        AtomSet const& block = spec.E().blocks()[spec.cover(sx)];
        ((xy & A.diversity()) - block).for_each([&](Atom z) {
          out.part(spec.slot_of(z)) = IndexSet::all();
        });
        // Same-block targets: max(i, j) over i != j, and k <= i over i = j.
        IndexSet same = S.above(T.min()).unite(T.above(S.min()));
        auto const both = S.intersect(T);
        if (!both.empty()) {
          same = same.unite(both.infinite() ? IndexSet::all()
                                            : IndexSet::upto(both.max()));
          if (x == y) {
            out.set_identity(true);
          }
        }
        (xy & block).for_each([&](Atom z) {
          auto& p = out.part(spec.slot_of(z));
          p       = p.unite(same);
        });
      }
    }
    return out;
  }

  bool almost_same(TailedElement const& u, TailedElement const& v) {
    if (u.spec() != v.spec() || u.width() != v.width()) {
      throw Error("almost_same: elements over different specs");
    }
    for (std::size_t s = 0; s < u.width(); ++s) {
      if (u.part(s).infinite() != v.part(s).infinite()) {
        return false;
      }
    }
    return true;
  }

  // Fragments

  std::string to_string(FragmentKind kind) {
    return kind == FragmentKind::Bn ? "Bn" : "Dn";
  }

  FragmentKind parse_fragment_kind(std::string const& s) {
    if (s == "bn" || s == "Bn" || s == "BN") {
      return FragmentKind::Bn;
    }
    if (s == "dn" || s == "Dn" || s == "DN") {
      return FragmentKind::Dn;
    }
    throw Error("unknown fragment kind '" + s + "' (expected bn or dn)");
  }

  TailedElement FiniteFragment::denotation(AtomSet const& a) const {
    if (elements.empty()) {
      throw Error("empty fragment");
    }
    auto out = TailedElement(elements[0].spec(), elements[0].width());
    a.for_each([&](Atom x) { out = out.unite(elements.at(x)); });
    return out;
  }

  std::optional<AtomSet> FiniteFragment::decompose(TailedElement const& u) const {
    AtomSet out(elements.size());
    for (Atom w = 0; w < elements.size(); ++w) {
      auto const meet = u.intersect(elements[w]);
      if (meet.empty()) {
        continue;
      }
      if (!(meet == elements[w])) {
        return std::nullopt;
      }
      out.insert(w);
    }
    if (!(denotation(out) == u)) {
      return std::nullopt;
    }
    return out;
  }

  FiniteFragment
  build_fragment(ThinnedSpec const& spec, std::size_t n, FragmentKind kind) {
    auto const& A = spec.A();
    auto const& E = spec.E();
    if (kind == FragmentKind::Bn) {
      auto se = check_special_extension(A, E);
      if (!se.holds) {
        throw Error("build_fragment: Bn requires A to be a special extension "
                    "of E");
      }
    }
    auto const N = static_cast<Index>(n);

    FiniteFragment                fr;
    fr.n                = n;
    fr.kind             = kind;
    fr.spec_fingerprint = spec.fingerprint();
    std::vector<std::string>      names{"1'"};
    fr.elements.push_back(spec.identity());
    for (std::size_t s = 0; s < spec.width(); ++s) {
      for (Index i = 0; i < N; ++i) {
        names.push_back(A.atom_name(spec.atom_of(s)) + "@" + std::to_string(i));
        fr.elements.push_back(spec.atom(spec.atom_of(s), i));
      }
    }
    if (kind == FragmentKind::Bn) {
      for (std::size_t b = 0; b < E.block_count(); ++b) {
        names.push_back("J(" + E.block_name(b) + ")@" + std::to_string(n));
        fr.elements.push_back(spec.J(E.blocks()[b], N));
      }
    } else {
      for (std::size_t s = 0; s < spec.width(); ++s) {
        names.push_back("J(" + A.atom_name(spec.atom_of(s)) + ")@"
                        + std::to_string(n));
        fr.elements.push_back(spec.J(spec.atom_of(s), N));
      }
    }

    auto const m = fr.elements.size();
    std::vector<Triple> cycles;
    for (Atom a = 0; a < m; ++a) {
      for (Atom b = 0; b < m; ++b) {
        auto const prod = tailed_product(spec, fr.elements[a], fr.elements[b]);
        auto const parts = fr.decompose(prod);
        if (!parts) {
          throw Error("build_fragment: closure failure: " + names[a] + ";"
                      + names[b] + " = " + spec.format(prod)
                      + " is not a union of fragment atoms");
        }
        parts->for_each([&](Atom c) { cycles.push_back({a, b, c}); });
      }
    }
    AtomSet identity(m);
    identity.insert(0);
    std::vector<Atom> converse(m);
    for (Atom a = 0; a < m; ++a) {
      converse[a] = a;
    }
    std::string name = A.name() + "/" + to_string(kind) + "_" + std::to_string(n);
    fr.algebra = FiniteAlgebra(AtomStructure::from_indices(
        name, std::move(names), identity, converse, cycles,
        CycleInput::strict));
    fr.report = check_axioms(fr.algebra);
    return fr;
  }

  BaseEmbedding verify_base_embedding(ThinnedSpec const& spec, std::size_t n) {
    BaseEmbedding out;
    out.fragment   = build_fragment(spec, n, FragmentKind::Dn);
    auto const& A  = spec.A();
    auto const& fr = out.fragment;
    for (Atom a = 0; a < A.size(); ++a) {
      auto image = fr.decompose(spec.J(a, 0));
      if (!image) {
        out.failure = "J(" + A.atom_name(a) + ",0) is not a fragment element";
        return out;
      }
      out.image.push_back(*image);
    }
    out.failure          = check_embedding(A, fr.algebra, out.image);
    out.products_checked = A.diversity_atoms().size() * A.diversity_atoms().size();
    out.holds            = !out.failure.has_value();
    return out;
  }

}  // namespace relalg
