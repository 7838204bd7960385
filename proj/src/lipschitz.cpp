#include "cvn/lipschitz.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace cvn {

std::vector<Candidate> candidate_loops(const SimplexRef& s) {
  std::map<CyclicWord, Candidate> unique;
  for (const CandidateLoop& c : enumerate_candidates(s.graph)) {
    CyclicWord w = read_loop(s, c.loop).unoriented();
    if (unique.contains(w)) continue;
    unique.emplace(w, Candidate{w, c.loop, crossings(s.graph, c.loop)});
  }
  std::vector<Candidate> out;
  out.reserve(unique.size());
  for (auto& [w, c] : unique) out.push_back(std::move(c));
  return out;
}

std::vector<CyclicWord> candidates_of(const SimplexRef& s) {
  std::vector<CyclicWord> out;
  for (Candidate& c : candidate_loops(s)) out.push_back(std::move(c.word));
  return out;
}

StretchResult stretch(const CVPoint& x, const CVPoint& y) {
  if (x.marked.rank() != y.marked.rank()) throw std::invalid_argument("stretch: rank mismatch");
  if (!x.open()) throw std::domain_error("stretch: zero-length edge in the source (infinite stretch risk)");
  std::optional<StretchResult> best;
  for (const Candidate& c : candidate_loops(x.marked)) {
    const Rational ratio = translation_length(y, c.word) / path_length(c.loop, x.lengths);
    // Candidates arrive sorted, so strict improvement keeps the least witness.
    if (!best || ratio > best->value) best = StretchResult{ratio, c.word};
  }
  return *best;
}

namespace {

// Lengths times their common denominator `den`.
std::vector<long> scaled(std::span<const Rational> lengths, mpz_class& den) {
  den = 1;
  for (const Rational& l : lengths) den = lcm(den, mpz_class(l.get_den()));
  if (!den.fits_slong_p() || den > mpz_class(1) << 40) {
    throw std::overflow_error("stretch_bruteforce: length denominators too large");
  }
  std::vector<long> out;
  for (const Rational& l : lengths) {
    const mpz_class v = mpz_class(l * den);
    if (!v.fits_slong_p()) throw std::overflow_error("stretch_bruteforce: length too large");
    out.push_back(v.get_si());
  }
  return out;
}

// Depth-first walk over reduced edge loops of x, tracking the freely reduced
// image path in y on a stack with an undo log.
class LoopSearch {
 public:
  LoopSearch(const CVPoint& x, const CVPoint& y, int max_edges)
      : gx_(x.marked.graph), max_edges_(max_edges), lx_(scaled(x.lengths, dx_)), ly_(scaled(y.lengths, dy_)) {
    for (EdgeId e = 0; e < gx_.edge_count(); ++e) {
      const Word& w = x.marked.bwd[static_cast<std::size_t>(e)];
      image_.push_back(w.empty() ? EdgePath{} : realise(y.marked, w));
    }
  }

  Rational run() {
    for (OEdge s = 0; s < 2 * gx_.edge_count(); ++s) {
      start_ = s;
      step(s, 0);
    }
    Rational r{mpz_class(best_num_) * dx_, mpz_class(best_den_) * dy_};
    r.canonicalize();
    return r;
  }

 private:
  struct Undo {
    std::vector<OEdge> popped;
    std::size_t pushed = 0;
  };

  void push_image(OEdge o, Undo& u) {
    const EdgePath& img = image_[static_cast<std::size_t>(edge_of(o))];
    auto push_one = [&](OEdge a) {
      if (!stack_.empty() && stack_.back() == reversed(a)) {
        u.popped.push_back(stack_.back());
        stack_.pop_back();
        prefix_.pop_back();
        if (u.pushed > 0) throw std::logic_error("stack image is not reduced");
      } else {
        prefix_.push_back(prefix_.back() + ly_[static_cast<std::size_t>(edge_of(a))]);
        stack_.push_back(a);
        ++u.pushed;
      }
    };
    if (is_backward(o)) {
      for (auto it = img.rbegin(); it != img.rend(); ++it) push_one(reversed(*it));
    } else {
      for (OEdge a : img) push_one(a);
    }
  }

  void undo(const Undo& u) {
    for (std::size_t i = 0; i < u.pushed; ++i) {
      stack_.pop_back();
      prefix_.pop_back();
    }
    for (auto it = u.popped.rbegin(); it != u.popped.rend(); ++it) {
      prefix_.push_back(prefix_.back() + ly_[static_cast<std::size_t>(edge_of(*it))]);
      stack_.push_back(*it);
    }
  }

  void record(long x_len) {
    std::size_t i = 0, j = stack_.size();
    while (j - i >= 2 && stack_[i] == reversed(stack_[j - 1])) {
      ++i;
      --j;
    }
    const long y_len = prefix_[j] - prefix_[i];
    if (static_cast<__int128>(y_len) * best_den_ > static_cast<__int128>(best_num_) * x_len) {
      best_num_ = y_len;
      best_den_ = x_len;
    }
  }

  void step(OEdge o, long x_len) {
    Undo u;
    push_image(o, u);
    path_.push_back(o);
    x_len += lx_[static_cast<std::size_t>(edge_of(o))];
    const VertexId at = gx_.terminus(o);
    if (at == gx_.origin(start_) && o != reversed(start_)) record(x_len);
    if (static_cast<int>(path_.size()) < max_edges_) {
      for (OEdge next : gx_.half_edges(at)) {
        if (next < start_ || next == reversed(o)) continue;
        step(next, x_len);
      }
    }
    path_.pop_back();
    undo(u);
  }

  const Graph& gx_;
  int max_edges_;
  mpz_class dx_, dy_;
  std::vector<long> lx_, ly_;
  std::vector<EdgePath> image_;
  OEdge start_ = 0;
  EdgePath path_;
  std::vector<OEdge> stack_;
  std::vector<long> prefix_{0};
  long best_num_ = 0, best_den_ = 1;
};

}  // namespace

Rational stretch_bruteforce(const CVPoint& x, const CVPoint& y, int max_edges) {
  if (x.marked.rank() != y.marked.rank()) throw std::invalid_argument("stretch_bruteforce: rank mismatch");
  if (!x.open()) throw std::domain_error("stretch_bruteforce: zero-length edge in the source");
  LoopSearch search(x, y, max_edges);
  return search.run();
}

bool ball_membership(const CVPoint& x, const CVPoint& t, const Rational& r, Ball kind) {
  switch (kind) {
    case Ball::in:
      return stretch(x, t).value <= r;
    case Ball::out:
      return stretch(t, x).value <= r;
    case Ball::symmetric:
      return stretch(x, t).value * stretch(t, x).value <= r;
  }
  return false;
}

}  // namespace cvn
