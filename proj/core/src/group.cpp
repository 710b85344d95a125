#include "conjint/group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_set>

#include "conjint/errors.hpp"

namespace conjint {

  std::string_view backend_name(Backend b) {
    switch (b) {
      case Backend::free:
        return "free";
      case Backend::semidirect:
        return "semidirect";
      case Backend::dehn:
        return "dehn";
    }
    return "unknown";
  }

  std::string HalfInteger::to_string() const {
    if (integral()) {
      return std::to_string(twice_ / 2);
    }
    return std::to_string(twice_) + "/2";
  }

  ////////////////////////////////////////////////////////////////////////
  // Group
  ////////////////////////////////////////////////////////////////////////

  Element Group::multiply(Element const& a, Element const& b) const {
    Element result = a;
    for (Letter x : representative(b)) {
      result = multiply_letter(result, x);
    }
    return result;
  }

  Element Group::inverse(Element const& e) const {
    return evaluate(representative(e).inverse());
  }

  Element Group::evaluate(Word const& w) const {
    for (Letter x : w) {
      if (x >= alphabet_.letter_count()) {
        throw MalformedWord("letter index " + std::to_string(x)
                            + " out of alphabet range");
      }
    }
    return evaluate_checked(w);
  }

  Element Group::evaluate_checked(Word const& w) const {
    Element e = identity();
    for (Letter x : w) {
      e = multiply_letter(e, x);
    }
    return e;
  }

  bool Group::is_identity(Word const& w) const {
    return evaluate(w) == identity();
  }

  std::size_t Group::geodesic_length(Element const& e) const {
    return bfs_geodesic_length(e);
  }

  std::size_t Group::bfs_geodesic_length(Element const& target) const {
    if (target == identity()) {
      return 0;
    }
    using Layer = std::unordered_set<Element, ElementHash>;
    Layer       seen_fwd{identity()}, seen_bwd{target};
    Layer       front_fwd{identity()}, front_bwd{target};
    std::size_t depth_fwd = 0, depth_bwd = 0;
    std::size_t const letters = alphabet_.letter_count();
    while (depth_fwd + depth_bwd < radius_cap_) {
      bool  forward = front_fwd.size() <= front_bwd.size();
      auto& front = forward ? front_fwd : front_bwd;
      auto& seen = forward ? seen_fwd : seen_bwd;
      auto& other = forward ? seen_bwd : seen_fwd;
      Layer next;
      for (auto const& e : front) {
        for (Letter x = 0; x < letters; ++x) {
          Element f = multiply_letter(e, x);
          if (other.count(f) != 0) {
            return depth_fwd + depth_bwd + 1;
          }
          if (seen.insert(f).second) {
            next.insert(std::move(f));
          }
        }
      }
      if (next.empty()) {
        break;  // finite group, target unreachable cannot happen
      }
      front = std::move(next);
      (forward ? depth_fwd : depth_bwd) += 1;
    }
    throw RadiusCapExceeded("geodesic search exceeded radius cap "
                            + std::to_string(radius_cap_));
  }

  std::vector<Word> Group::geodesic_representatives(Element const& e,
                                                    std::size_t    cap) const {
    std::size_t const n = geodesic_length(e);
    std::vector<Word> out;
    std::vector<Letter> buf;
    Element const     target = e;
    auto              rec = [&](auto&& self, Element const& prefix, std::size_t remaining)
        -> void {
      if (remaining == 0) {
        if (out.size() >= cap) {
          throw ResourceCapExceeded("more than " + std::to_string(cap)
                                    + " geodesic representatives");
        }
        out.push_back(reduce(buf));
        return;
      }
      for (Letter x = 0; x < alphabet_.letter_count(); ++x) {
        if (!buf.empty() && buf.back() == inverse_letter(x)) {
          continue;
        }
        Element next = multiply_letter(prefix, x);
        if (geodesic_length(multiply(inverse(next), target)) != remaining - 1) {
          continue;
        }
        buf.push_back(x);
        self(self, next, remaining - 1);
        buf.pop_back();
      }
    };
    rec(rec, identity(), n);
    return out;
  }

  std::vector<BallEntry> Group::ball(std::size_t radius, std::size_t max_elements) const {
    std::vector<BallEntry>                                 out;
    std::unordered_map<Element, std::size_t, ElementHash> index;
    out.push_back({identity(), Word{}});
    index.emplace(identity(), 0);
    std::size_t layer_begin = 0;
    for (std::size_t r = 0; r < radius; ++r) {
      std::size_t layer_end = out.size();
      for (std::size_t i = layer_begin; i < layer_end; ++i) {
        for (Letter x = 0; x < alphabet_.letter_count(); ++x) {
          Word const& rep = out[i].representative;
          if (!rep.empty() && rep.back() == inverse_letter(x)) {
            continue;
          }
          Element f = multiply_letter(out[i].element, x);
          if (index.count(f) != 0) {
            continue;
          }
          if (out.size() >= max_elements) {
            throw ResourceCapExceeded("ball of radius " + std::to_string(radius)
                                      + " exceeds " + std::to_string(max_elements)
                                      + " elements");
          }
          Word next = rep;
          next.push_back(x);
          index.emplace(f, out.size());
          out.push_back({std::move(f), std::move(next)});
        }
      }
      layer_begin = layer_end;
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // FreeGroup
  ////////////////////////////////////////////////////////////////////////

  FreeGroup::FreeGroup(Alphabet alphabet, HalfInteger delta, std::size_t c)
      : Group(Backend::free, std::move(alphabet), delta, c == 0 ? 1 : c) {}

  Element FreeGroup::evaluate_checked(Word const& w) const {
    return Element{w, 0};
  }

  Element FreeGroup::multiply_letter(Element const& e, Letter x) const {
    Element out = e;
    out.word.push_back(x);
    return out;
  }

  Element FreeGroup::multiply(Element const& a, Element const& b) const {
    return Element{a.word * b.word, 0};
  }

  Element FreeGroup::inverse(Element const& e) const {
    return Element{e.word.inverse(), 0};
  }

  Word FreeGroup::representative(Element const& e) const {
    return e.word;
  }

  std::size_t FreeGroup::geodesic_length(Element const& e) const {
    return e.word.size();
  }

  ////////////////////////////////////////////////////////////////////////
  // SemidirectGroup
  ////////////////////////////////////////////////////////////////////////

  SemidirectGroup::SemidirectGroup(Alphabet          alphabet,
                                   HalfInteger       delta,
                                   std::size_t       torsion_generator,
                                   std::size_t       torsion_order,
                                   std::vector<long> automorphism,
                                   std::size_t       c)
      : Group(Backend::semidirect,
              std::move(alphabet),
              delta,
              c == 0 ? 2 * torsion_order : c),
        torsion_gen_(torsion_generator),
        m_(torsion_order) {
    std::size_t const rank = this->alphabet().rank();
    if (torsion_gen_ >= rank) {
      throw InvalidConfig("torsion letter is not a generator");
    }
    // Normal forms w t^k are shortlex-least only with t ordered last.
    if (torsion_gen_ + 1 != rank) {
      throw InvalidConfig("torsion letter must be the last generator");
    }
    if (m_ == 0) {
      throw InvalidConfig("torsion_order must be positive");
    }
    std::size_t const n = rank - 1;
    if (automorphism.size() != n) {
      throw InvalidConfig("automorphism must list " + std::to_string(n) + " images");
    }
    // free index i (0-based, alphabet order skipping t) <-> generator index
    std::vector<std::size_t> free_to_gen;
    for (std::size_t g = 0; g < rank; ++g) {
      if (g != torsion_gen_) {
        free_to_gen.push_back(g);
      }
    }
    std::vector<std::size_t> phi(n);
    std::vector<bool>        hit(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      long img = automorphism[i];
      if (img < 1 || img > static_cast<long>(n) || hit[img - 1]) {
        throw InvalidConfig("automorphism is not a permutation of 1.." + std::to_string(n));
      }
      hit[img - 1] = true;
      phi[i] = static_cast<std::size_t>(img - 1);
    }
    // t x_j t^-1 = x_{phi^-1(j)}
    std::vector<std::size_t> psi(n);
    for (std::size_t i = 0; i < n; ++i) {
      psi[phi[i]] = i;
    }
    psi_.assign(m_, std::vector<std::size_t>(rank));
    std::vector<std::size_t> cur(n);
    std::iota(cur.begin(), cur.end(), 0);
    for (std::size_t k = 0; k < m_; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        psi_[k][free_to_gen[i]] = free_to_gen[cur[i]];
      }
      psi_[k][torsion_gen_] = torsion_gen_;
      for (std::size_t i = 0; i < n; ++i) {
        cur[i] = psi[cur[i]];
      }
    }
    // t^m must act trivially for the presentation to be consistent
    for (std::size_t i = 0; i < n; ++i) {
      if (cur[i] != i) {
        throw InvalidConfig("automorphism order does not divide torsion_order");
      }
    }
  }

  Letter SemidirectGroup::twist(Letter x, long k) const {
    long kk = ((k % static_cast<long>(m_)) + static_cast<long>(m_)) % static_cast<long>(m_);
    return make_letter(psi_[kk][generator_of(x)], is_inverse(x));
  }

  Word SemidirectGroup::twist(Word const& w, long k) const {
    std::vector<Letter> out;
    out.reserve(w.size());
    for (Letter x : w) {
      out.push_back(twist(x, k));
    }
    return Word(std::move(out));
  }

  Element SemidirectGroup::evaluate_checked(Word const& w) const {
    Element out;
    long    m = static_cast<long>(m_);
    for (Letter x : w) {
      if (is_torsion_letter(x)) {
        out.torsion = (out.torsion + (is_inverse(x) ? m - 1 : 1)) % m;
      } else {
        out.word.push_back(twist(x, out.torsion));
      }
    }
    return out;
  }

  Element SemidirectGroup::multiply_letter(Element const& e, Letter x) const {
    Element out = e;
    long    m = static_cast<long>(m_);
    if (is_torsion_letter(x)) {
      out.torsion = (e.torsion + (is_inverse(x) ? m - 1 : 1)) % m;
    } else {
      out.word.push_back(twist(x, e.torsion));
    }
    return out;
  }

  Element SemidirectGroup::multiply(Element const& a, Element const& b) const {
    return Element{a.word * twist(b.word, a.torsion),
                   (a.torsion + b.torsion) % static_cast<long>(m_)};
  }

  Element SemidirectGroup::inverse(Element const& e) const {
    long m = static_cast<long>(m_);
    long k = (m - e.torsion) % m;
    return Element{twist(e.word.inverse(), k), k};
  }

  Word SemidirectGroup::representative(Element const& e) const {
    Word   out = e.word;
    long   m = static_cast<long>(m_);
    long   k = e.torsion;
    Letter t = make_letter(torsion_gen_, false);
    if (k <= m - k) {
      for (long i = 0; i < k; ++i) {
        out.push_back(t);
      }
    } else {
      for (long i = 0; i < m - k; ++i) {
        out.push_back(inverse_letter(t));
      }
    }
    return out;
  }

  std::size_t SemidirectGroup::geodesic_length(Element const& e) const {
    long m = static_cast<long>(m_);
    return e.word.size() + static_cast<std::size_t>(std::min(e.torsion, m - e.torsion));
  }

  ////////////////////////////////////////////////////////////////////////
  // DehnGroup
  ////////////////////////////////////////////////////////////////////////

  namespace {
    Word cyclically_reduce(Word w) {
      while (w.size() >= 2 && w[0] == inverse_letter(w.back())) {
        w = w.subword(1, w.size() - 2);
      }
      return w;
    }

    std::vector<Word> symmetrize(std::vector<Word> const& relators) {
      std::vector<Word> out;
      for (auto const& raw : relators) {
        Word r = cyclically_reduce(raw);
        if (r.empty()) {
          continue;
        }
        for (Word const& base : {r, r.inverse()}) {
          for (std::size_t i = 0; i < base.size(); ++i) {
            out.push_back(base.suffix(i) * base.prefix(i));
          }
        }
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      return out;
    }

    std::size_t default_bound(std::vector<Word> const& relators) {
      std::size_t longest = 1;
      for (auto const& r : relators) {
        longest = std::max(longest, r.size());
      }
      return 2 * longest;
    }
  }  // namespace

  DehnGroup::DehnGroup(Alphabet          alphabet,
                       HalfInteger       delta,
                       std::vector<Word> relators,
                       std::size_t       check_length,
                       std::size_t       c)
      : Group(Backend::dehn, std::move(alphabet), delta, c == 0 ? default_bound(relators) : c),
        symmetrized_(symmetrize(relators)) {
    // Necessary-condition check of the Dehn property: conjugates of relators
    // and products of two conjugates must reduce to the empty word.
    std::vector<Word> conjugators
        = enumerate_reduced(this->alphabet(), check_length, 200'000);
    std::vector<Word> conjugates;
    std::size_t       short_count = 0;
    for (auto const& u : conjugators) {
      for (auto const& r : symmetrized_) {
        conjugates.push_back(u * r * u.inverse());
      }
      if (u.size() <= 1) {
        short_count = conjugates.size();
      }
    }
    auto fail = [this](Word const& w) {
      throw UnsupportedPresentation("presentation is not in Dehn form: word '"
                                    + format_word(w, this->alphabet())
                                    + "' equals 1 but is not Dehn-reducible");
    };
    for (auto const& w : conjugates) {
      if (!dehn_reduce(w).empty()) {
        fail(w);
      }
    }
    for (std::size_t i = 0; i < short_count; ++i) {
      for (std::size_t j = 0; j < short_count; ++j) {
        Word w = conjugates[i] * conjugates[j];
        if (!dehn_reduce(w).empty()) {
          fail(w);
        }
      }
    }
  }

  Word DehnGroup::dehn_reduce(Word const& input) const {
    Word w = input;
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < w.size() && !changed; ++i) {
        for (auto const& r : symmetrized_) {
          std::size_t const L = r.size();
          std::size_t       len = 0;
          while (len < L && i + len < w.size() && w[i + len] == r[len]) {
            ++len;
          }
          if (2 * len > L) {
            Word replaced = w.prefix(i) * r.suffix(len).inverse()
                            * w.suffix(i + len);
            w = std::move(replaced);
            changed = true;
            break;
          }
        }
      }
    }
    return w;
  }

  bool DehnGroup::is_identity(Word const& w) const {
    return dehn_reduce(w).empty();
  }

  Word DehnGroup::canonical(Word const& w) const {
    Word d = dehn_reduce(w);
    {
      std::lock_guard lock(cache_mutex_);
      if (auto it = canonical_cache_.find(d); it != canonical_cache_.end()) {
        return it->second;
      }
    }
    std::size_t const    letters = alphabet().letter_count();
    std::optional<Word>  found;
    std::vector<Letter>  buf;
    auto rec = [&](auto&& self, std::size_t remaining) -> bool {
      if (remaining == 0) {
        Word u = reduce(buf);
        if (dehn_reduce(u.inverse() * d).empty()) {
          found = std::move(u);
          return true;
        }
        return false;
      }
      for (Letter x = 0; x < letters; ++x) {
        if (!buf.empty() && buf.back() == inverse_letter(x)) {
          continue;
        }
        buf.push_back(x);
        if (self(self, remaining - 1)) {
          return true;
        }
        buf.pop_back();
      }
      return false;
    };
    for (std::size_t len = 0; len <= d.size() && !found; ++len) {
      buf.clear();
      rec(rec, len);
    }
    Word result = found ? *found : d;
    std::lock_guard lock(cache_mutex_);
    canonical_cache_.emplace(d, result);
    return result;
  }

  Element DehnGroup::evaluate_checked(Word const& w) const {
    return Element{canonical(w), 0};
  }

  Element DehnGroup::multiply_letter(Element const& e, Letter x) const {
    Word w = e.word;
    w.push_back(x);
    return Element{canonical(w), 0};
  }

  Element DehnGroup::multiply(Element const& a, Element const& b) const {
    return Element{canonical(a.word * b.word), 0};
  }

  Element DehnGroup::inverse(Element const& e) const {
    return Element{canonical(e.word.inverse()), 0};
  }

  Word DehnGroup::representative(Element const& e) const {
    return e.word;
  }

  std::size_t DehnGroup::geodesic_length(Element const& e) const {
    return e.word.size();
  }

  ////////////////////////////////////////////////////////////////////////
  // Factory
  ////////////////////////////////////////////////////////////////////////

  std::shared_ptr<Group const> make_group(GroupDescriptor const& d) {
    Alphabet                alphabet(d.generators);
    std::shared_ptr<Group> g;
    switch (d.backend) {
      case Backend::free:
        g = std::make_shared<FreeGroup>(alphabet, d.delta, d.finite_order_bound);
        break;
      case Backend::semidirect: {
        auto t = alphabet.find(d.torsion_letter);
        if (!t) {
          throw InvalidConfig("torsion_letter '" + d.torsion_letter
                              + "' is not among the generators");
        }
        if (d.free_rank != 0 && d.free_rank + 1 != alphabet.rank()) {
          throw InvalidConfig("free_rank does not match the generator list");
        }
        g = std::make_shared<SemidirectGroup>(alphabet,
                                              d.delta,
                                              *t,
                                              d.torsion_order,
                                              d.automorphism,
                                              d.finite_order_bound);
        break;
      }
      case Backend::dehn: {
        std::vector<Word> relators;
        for (auto const& r : d.relators) {
          relators.push_back(parse_word(r, alphabet));
        }
        g = std::make_shared<DehnGroup>(alphabet,
                                        d.delta,
                                        std::move(relators),
                                        d.dehn_check_length,
                                        d.finite_order_bound);
        break;
      }
    }
    g->set_radius_cap(d.radius_cap);
    return g;
  }

}  // namespace conjint
