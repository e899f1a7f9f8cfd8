#include "ncalg/lyndon.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

namespace ncalg {

bool is_lyndon(const Word& w) {
  if (w.empty()) return false;
  const size_t k = w.size();
  // Strictly smaller than every proper rotation.
  for (size_t r = 1; r < k; ++r) {
    for (size_t i = 0; i < k; ++i) {
      Letter a = w[i], b = w[(i + r) % k];
      if (a < b) break;
      if (a > b) return false;
      if (i + 1 == k) return false;  // equal to a proper rotation
    }
  }
  return true;
}

std::vector<Word> lyndon_words(unsigned n, unsigned max_degree) {
  std::vector<std::vector<Word>> by_deg(max_degree + 1);
  // Duval's generation in lex order.
  Word w{0};
  while (true) {
    if (w.size() <= max_degree) by_deg[w.size()].push_back(w);
    Word t = w;
    while (t.size() < max_degree) t.push_back(t[t.size() % w.size()]);
    while (!t.empty() && t.back() == Letter(n - 1)) t.pop_back();
    if (t.empty()) break;
    t.back() += 1;
    w = std::move(t);
  }
  std::vector<Word> out;
  for (unsigned d = 1; d <= max_degree; ++d)
    out.insert(out.end(), by_deg[d].begin(), by_deg[d].end());
  return out;
}

namespace {
int moebius(uint64_t m) {
  int mu = 1;
  for (uint64_t p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    m /= p;
    if (m % p == 0) return 0;
    mu = -mu;
  }
  if (m > 1) mu = -mu;
  return mu;
}
}  // namespace

uint64_t witt_dimension(unsigned n, unsigned k) {
  if (k == 0) return 0;
  int64_t total = 0;
  for (uint64_t e = 1; e <= k; ++e) {
    if (k % e) continue;
    int mu = moebius(e);
    if (mu == 0) continue;
    int64_t p = 1;
    for (uint64_t i = 0; i < k / e; ++i) p *= n;
    total += mu * p;
  }
  return uint64_t(total / int64_t(k));
}

LieBasis::LieBasis(unsigned n, unsigned max_degree)
    : n_(n), max_degree_(max_degree) {
  if (n == 0 || n > 255) throw ArityMismatch("generator count out of range");
  for (const Word& w : lyndon_words(n, max_degree)) {
    BasisElement e;
    e.word = w;
    e.degree = unsigned(w.size());
    if (w.size() >= 2) {
      bool split = false;
      for (size_t cut = w.size() - 1; cut >= 1 && !split; --cut) {
        Word u(w.begin(), w.begin() + cut), v(w.begin() + cut, w.end());
        if (is_lyndon(u) && is_lyndon(v)) {
          e.left = index_.at(u);
          e.right = index_.at(v);
          split = true;
        }
      }
      if (!split) throw Error("no standard factorization");
    }
    index_.emplace(w, uint32_t(elems_.size()));
    elems_.push_back(std::move(e));
  }
}

std::optional<uint32_t> LieBasis::find(const Word& w) const {
  auto it = index_.find(w);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string LieBasis::render(uint32_t id) const {
  const BasisElement& e = elems_[id];
  if (e.degree == 1) return "x" + std::to_string(unsigned(e.word[0]) + 1);
  return "[" + render(e.left) + "," + render(e.right) + "]";
}

namespace {
std::mutex registry_mutex;
std::map<unsigned, std::shared_ptr<const LieBasis>>& basis_registry() {
  static std::map<unsigned, std::shared_ptr<const LieBasis>> r;
  return r;
}

// Smallest cached table whose id range covers the given id.
std::shared_ptr<const LieBasis> basis_containing(unsigned n, uint32_t id) {
  auto basis = lie_basis(n, 1);
  while (id >= basis->size()) basis = lie_basis(n, basis->max_degree() + 1);
  return basis;
}
}  // namespace

std::shared_ptr<const LieBasis> lie_basis(unsigned n, unsigned max_degree) {
  std::lock_guard<std::mutex> lock(registry_mutex);
  auto& reg = basis_registry();
  auto it = reg.find(n);
  if (it != reg.end() && it->second->max_degree() >= max_degree)
    return it->second;
  auto fresh = std::make_shared<const LieBasis>(n, std::max(max_degree, 1u));
  reg[n] = fresh;
  return fresh;
}

std::string basis_render(unsigned n, uint32_t id) {
  return basis_containing(n, id)->render(id);
}

void LieElement::add(uint32_t id, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = comps.emplace(id, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) comps.erase(it);
  }
}

LieElement& LieElement::operator+=(const LieElement& o) {
  if (n != o.n && !o.comps.empty() && !comps.empty())
    throw ArityMismatch("Lie element arity mismatch");
  if (comps.empty()) n = o.n;
  for (const auto& [id, c] : o.comps) add(id, c);
  return *this;
}

LieElement LieElement::scaled(const Rational& c) const {
  LieElement r;
  r.n = n;
  if (c == 0) return r;
  for (const auto& [id, k] : comps) r.comps.emplace(id, k * c);
  return r;
}

namespace {
std::mutex memo_mutex;
std::map<std::tuple<unsigned, uint32_t, uint32_t>, LieElement>& bracket_memo() {
  static std::map<std::tuple<unsigned, uint32_t, uint32_t>, LieElement> m;
  return m;
}
std::map<std::pair<unsigned, uint32_t>, WordPoly>& expand_memo() {
  static std::map<std::pair<unsigned, uint32_t>, WordPoly> m;
  return m;
}
}  // namespace

const WordPoly& expand_basis(unsigned n, uint32_t id) {
  {
    std::lock_guard<std::mutex> lock(memo_mutex);
    auto& memo = expand_memo();
    auto it = memo.find({n, id});
    if (it != memo.end()) return it->second;
  }
  auto basis = basis_containing(n, id);
  const BasisElement& e = (*basis)[id];
  WordPoly w = e.degree == 1
                   ? WordPoly::letter(n, e.word[0])
                   : commutator(expand_basis(n, e.left),
                                expand_basis(n, e.right));
  std::lock_guard<std::mutex> lock(memo_mutex);
  return expand_memo().emplace(std::make_pair(n, id), std::move(w))
      .first->second;
}

WordPoly expand(const LieElement& a) {
  WordPoly r(a.n);
  for (const auto& [id, c] : a.comps) r += expand_basis(a.n, id).scaled(c);
  return r;
}

LieElement decompose_lie(const WordPoly& p) {
  const unsigned n = p.n();
  LieElement out;
  out.n = n;
  if (p.is_zero()) return out;
  auto basis = lie_basis(n, unsigned(p.max_length()));
  // Work per homogeneous degree; expansions are degree-homogeneous.
  std::map<size_t, WordPoly> by_deg;
  for (const auto& [w, c] : p.terms()) {
    auto [it, fresh] = by_deg.emplace(w.size(), WordPoly(n));
    it->second.add_term(w, c);
  }
  for (auto& [deg, comp] : by_deg) {
    if (deg == 0) throw NotLieElement("constant term in Lie decomposition");
    while (!comp.is_zero()) {
      // Lex-least word of this degree; expansions are triangular wrt it.
      const auto& [w, c] = *comp.terms().begin();
      auto id = basis->find(w);
      if (!id)
        throw NotLieElement("leading word is not Lyndon: " + word_to_string(w));
      out.add(*id, c);
      comp -= expand_basis(n, *id).scaled(c);
    }
  }
  return out;
}

const LieElement& bracket_basis(unsigned n, uint32_t i, uint32_t j) {
  {
    std::lock_guard<std::mutex> lock(memo_mutex);
    auto& memo = bracket_memo();
    auto it = memo.find({n, i, j});
    if (it != memo.end()) return it->second;
  }
  LieElement r;
  r.n = n;
  if (i > j) {
    r = bracket_basis(n, j, i).scaled(-1);
  } else if (i < j) {
    r = decompose_lie(commutator(expand_basis(n, i), expand_basis(n, j)));
  }
  std::lock_guard<std::mutex> lock(memo_mutex);
  return bracket_memo().emplace(std::make_tuple(n, i, j), std::move(r))
      .first->second;
}

LieElement bracket(const LieElement& a, const LieElement& b) {
  if (a.n != b.n && !a.comps.empty() && !b.comps.empty())
    throw ArityMismatch("Lie element arity mismatch");
  LieElement r;
  r.n = a.comps.empty() ? b.n : a.n;
  for (const auto& [i, ci] : a.comps)
    for (const auto& [j, cj] : b.comps)
      r += bracket_basis(r.n, i, j).scaled(ci * cj);
  return r;
}

}  // namespace ncalg
