#ifndef RELALG_ATOM_SET_HPP
#define RELALG_ATOM_SET_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace relalg {

  using Atom = std::size_t;

  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // A subset of {0, ..., universe-1}. Elements of a finite atomic algebra are
  // stored this way: bit x is set iff atom x lies below the element.
  class AtomSet {
   public:
    AtomSet() = default;
    explicit AtomSet(std::size_t universe)
        : _universe(universe), _words((universe + 63) / 64, 0) {}

    static AtomSet full(std::size_t universe) {
      AtomSet s(universe);
      for (std::size_t x = 0; x < universe; ++x) {
        s.insert(x);
      }
      return s;
    }

    static AtomSet of(std::size_t universe, std::initializer_list<Atom> xs) {
      AtomSet s(universe);
      for (Atom x : xs) {
        s.insert(x);
      }
      return s;
    }

    std::size_t universe() const noexcept { return _universe; }

    bool contains(Atom x) const noexcept {
      return x < _universe && ((_words[x / 64] >> (x % 64)) & 1U);
    }

    void insert(Atom x) {
      check(x);
      _words[x / 64] |= (std::uint64_t(1) << (x % 64));
    }

    void erase(Atom x) {
      check(x);
      _words[x / 64] &= ~(std::uint64_t(1) << (x % 64));
    }

    std::size_t count() const noexcept {
      std::size_t n = 0;
      for (auto w : _words) {
        n += static_cast<std::size_t>(std::popcount(w));
      }
      return n;
    }

    bool empty() const noexcept {
      for (auto w : _words) {
        if (w != 0) {
          return false;
        }
      }
      return true;
    }

    bool intersects(AtomSet const& other) const noexcept {
      for (std::size_t i = 0; i < _words.size() && i < other._words.size();
           ++i) {
        if ((_words[i] & other._words[i]) != 0) {
          return true;
        }
      }
      return false;
    }

    bool is_subset_of(AtomSet const& other) const noexcept {
      for (std::size_t i = 0; i < _words.size(); ++i) {
        std::uint64_t o = i < other._words.size() ? other._words[i] : 0;
        if ((_words[i] & ~o) != 0) {
          return false;
        }
      }
      return true;
    }

    AtomSet& operator|=(AtomSet const& other) {
      same_universe(other);
      for (std::size_t i = 0; i < _words.size(); ++i) {
        _words[i] |= other._words[i];
      }
      return *this;
    }

    AtomSet& operator&=(AtomSet const& other) {
      same_universe(other);
      for (std::size_t i = 0; i < _words.size(); ++i) {
        _words[i] &= other._words[i];
      }
      return *this;
    }

    AtomSet& operator-=(AtomSet const& other) {
      same_universe(other);
      for (std::size_t i = 0; i < _words.size(); ++i) {
        _words[i] &= ~other._words[i];
      }
      return *this;
    }

    AtomSet complement() const {
      AtomSet s(_universe);
      for (std::size_t i = 0; i < _words.size(); ++i) {
        s._words[i] = ~_words[i];
      }
      s.trim();
      return s;
    }

    // Ascending list of members; this is the canonical encoding used in
    // reports.
    std::vector<Atom> members() const {
      std::vector<Atom> out;
      for (std::size_t i = 0; i < _words.size(); ++i) {
        std::uint64_t w = _words[i];
        while (w != 0) {
          int b = std::countr_zero(w);
          out.push_back(i * 64 + static_cast<std::size_t>(b));
          w &= w - 1;
        }
      }
      return out;
    }

    // Least member, or universe() when empty.
    Atom first() const noexcept {
      for (std::size_t i = 0; i < _words.size(); ++i) {
        if (_words[i] != 0) {
          return i * 64 + static_cast<std::size_t>(std::countr_zero(_words[i]));
        }
      }
      return _universe;
    }

    template <typename F>
    void for_each(F&& f) const {
      for (std::size_t i = 0; i < _words.size(); ++i) {
        std::uint64_t w = _words[i];
        while (w != 0) {
          int b = std::countr_zero(w);
          f(i * 64 + static_cast<std::size_t>(b));
          w &= w - 1;
        }
      }
    }

    std::size_t hash() const noexcept {
      std::size_t h = _universe;
      for (auto w : _words) {
        h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6)
             + (h >> 2);
      }
      return h;
    }

    friend bool operator==(AtomSet const&, AtomSet const&) = default;

    friend bool operator<(AtomSet const& a, AtomSet const& b) {
      return a.members() < b.members();
    }

    friend AtomSet operator|(AtomSet a, AtomSet const& b) { return a |= b; }
    friend AtomSet operator&(AtomSet a, AtomSet const& b) { return a &= b; }
    friend AtomSet operator-(AtomSet a, AtomSet const& b) { return a -= b; }

   private:
    void check(Atom x) const {
      if (x >= _universe) {
        throw Error("atom index " + std::to_string(x) + " out of range "
                    + std::to_string(_universe));
      }
    }

    void same_universe(AtomSet const& other) const {
      if (other._universe != _universe) {
        throw Error("atom sets over different universes");
      }
    }

    void trim() noexcept {
      if (_universe % 64 != 0 && !_words.empty()) {
        _words.back() &= (std::uint64_t(1) << (_universe % 64)) - 1;
      }
    }

    std::size_t                _universe = 0;
    std::vector<std::uint64_t> _words;
  };

  struct AtomSetHash {
    std::size_t operator()(AtomSet const& s) const noexcept { return s.hash(); }
  };

}  // namespace relalg

#endif  // RELALG_ATOM_SET_HPP
