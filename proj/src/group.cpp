#include "l2h/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_set>

#include "l2h/errors.hpp"

namespace l2h {

const char* group_kind_name(GroupKind kind) {
  switch (kind) {
    case GroupKind::free: return "free";
    case GroupKind::direct_product: return "direct_product";
    case GroupKind::rewriting: return "rewriting";
    case GroupKind::finite_table: return "finite_table";
  }
  return "?";
}

Word Group::multiply(const Word& u, const Word& v) const {
  std::vector<Letter> all(u.letters);
  all.insert(all.end(), v.letters.begin(), v.letters.end());
  return normalize(all);
}

Word Group::invert(const Word& u) const { return normalize(inverse_letters(u.letters)); }

namespace {

std::vector<std::string> default_names(std::size_t rank) {
  static const char* base[] = {"a", "b", "c", "d", "f", "g", "h", "k"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < rank; ++i)
    out.push_back(i < 8 ? std::string(base[i]) : "x" + std::to_string(i));
  return out;
}

void free_reduce_into(std::vector<Letter>& out, Letter l) {
  if (!out.empty() && out.back() == -l)
    out.pop_back();
  else
    out.push_back(l);
}

void check_letters(std::span<const Letter> letters, std::size_t n) {
  for (Letter l : letters)
    if (l == 0 || generator_of(l) >= n)
      throw Error(ErrorCode::invalid_argument, "letter outside the generating set");
}

}  // namespace

// ---------------------------------------------------------------- FreeGroup

FreeGroup::FreeGroup(std::size_t rank) : Group(default_names(rank)) {}
FreeGroup::FreeGroup(std::vector<std::string> names) : Group(std::move(names)) {}

Word FreeGroup::normalize(std::span<const Letter> letters) const {
  check_letters(letters, num_generators());
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (Letter l : letters) free_reduce_into(out, l);
  return Word(std::move(out));
}

Word FreeGroup::multiply(const Word& u, const Word& v) const {
  std::size_t i = 0;
  const std::size_t nu = u.size();
  const std::size_t nv = v.size();
  while (i < nu && i < nv && u.letters[nu - 1 - i] == -v.letters[i]) ++i;
  std::vector<Letter> out;
  out.reserve(nu + nv - 2 * i);
  out.insert(out.end(), u.letters.begin(), u.letters.end() - static_cast<std::ptrdiff_t>(i));
  out.insert(out.end(), v.letters.begin() + static_cast<std::ptrdiff_t>(i), v.letters.end());
  return Word(std::move(out));
}

// ------------------------------------------------------- DirectProductGroup

namespace {

std::vector<std::string> product_names(const std::vector<GroupPtr>& factors,
                                       const std::vector<std::size_t>& assignment) {
  std::vector<std::string> names;
  std::vector<std::size_t> next(factors.size(), 0);
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  if (assignment.empty()) {
    for (std::size_t f = 0; f < factors.size(); ++f)
      for (std::size_t i = 0; i < factors[f]->num_generators(); ++i) slots.emplace_back(f, i);
  } else {
    for (std::size_t f : assignment) slots.emplace_back(f, next[f]++);
  }
  std::set<std::string> all;
  bool clash = false;
  for (auto [f, i] : slots) clash |= !all.insert(factors[f]->generator_names().at(i)).second;
  for (auto [f, i] : slots) {
    const auto& n = factors[f]->generator_names().at(i);
    names.push_back(clash ? n + std::to_string(f + 1) : n);
  }
  return names;
}

}  // namespace

DirectProductGroup::DirectProductGroup(std::vector<GroupPtr> factors, std::vector<std::string> names,
                                       std::vector<std::size_t> generator_factor)
    : Group(names.empty() ? product_names(factors, generator_factor) : names),
      factors_(std::move(factors)) {
  if (factors_.size() < 2)
    throw Error(ErrorCode::invalid_argument, "a direct product needs at least two factors");
  if (generator_factor.empty())
    for (std::size_t f = 0; f < factors_.size(); ++f)
      for (std::size_t i = 0; i < factors_[f]->num_generators(); ++i) generator_factor.push_back(f);
  if (generator_factor.size() != num_generators())
    throw Error(ErrorCode::invalid_argument, "generator assignment does not match names");
  factor_gens_.resize(factors_.size());
  for (std::size_t g = 0; g < generator_factor.size(); ++g) {
    std::size_t f = generator_factor[g];
    if (f >= factors_.size()) throw Error(ErrorCode::invalid_argument, "bad factor index");
    gen_factor_.push_back(f);
    gen_local_.push_back(factor_gens_[f].size());
    factor_gens_[f].push_back(g);
  }
  for (std::size_t f = 0; f < factors_.size(); ++f)
    if (factor_gens_[f].size() != factors_[f]->num_generators())
      throw Error(ErrorCode::invalid_argument, "generator assignment does not match factor ranks");
}

Word DirectProductGroup::normalize(std::span<const Letter> letters) const {
  check_letters(letters, num_generators());
  std::vector<std::vector<Letter>> parts(factors_.size());
  for (Letter l : letters) {
    std::size_t g = generator_of(l);
    parts[gen_factor_[g]].push_back(make_letter(gen_local_[g], is_inverse(l)));
  }
  std::vector<Letter> out;
  for (std::size_t f = 0; f < factors_.size(); ++f) {
    Word local = factors_[f]->normalize(parts[f]);
    for (Letter l : local.letters)
      out.push_back(make_letter(factor_gens_[f][generator_of(l)], is_inverse(l)));
  }
  return Word(std::move(out));
}

std::vector<Word> DirectProductGroup::split(const Word& w) const {
  std::vector<Word> parts(factors_.size());
  for (Letter l : w.letters) {
    std::size_t g = generator_of(l);
    parts[gen_factor_[g]].letters.push_back(make_letter(gen_local_[g], is_inverse(l)));
  }
  return parts;
}

std::size_t DirectProductGroup::length(const Word& u) const {
  auto parts = split(u);
  std::size_t total = 0;
  for (std::size_t f = 0; f < parts.size(); ++f) total += factors_[f]->length(parts[f]);
  return total;
}

std::optional<std::size_t> DirectProductGroup::single_factor(const Word& w) const {
  if (w.is_identity()) return std::nullopt;
  std::size_t f = gen_factor_[generator_of(w.letters.front())];
  for (Letter l : w.letters)
    if (gen_factor_[generator_of(l)] != f) return std::nullopt;
  return f;
}

Word DirectProductGroup::embed(std::size_t factor, const Word& local) const {
  std::vector<Letter> out;
  for (Letter l : local.letters)
    out.push_back(make_letter(factor_gens_.at(factor).at(generator_of(l)), is_inverse(l)));
  return Word(std::move(out));
}

// --------------------------------------------------------- FiniteTableGroup

FiniteTableGroup::FiniteTableGroup(std::vector<std::vector<std::size_t>> table,
                                   std::vector<std::size_t> generator_images,
                                   std::vector<std::string> names)
    : Group(std::move(names)), table_(std::move(table)), images_(std::move(generator_images)) {
  const std::size_t n = table_.size();
  if (n == 0) throw Error(ErrorCode::invalid_argument, "empty multiplication table");
  if (images_.size() != num_generators())
    throw Error(ErrorCode::invalid_argument, "generator image count mismatch");
  for (const auto& row : table_) {
    if (row.size() != n) throw Error(ErrorCode::invalid_argument, "table is not square");
    for (std::size_t x : row)
      if (x >= n) throw Error(ErrorCode::invalid_argument, "table entry out of range");
  }
  for (std::size_t i = 0; i < n; ++i)
    if (table_[0][i] != i || table_[i][0] != i)
      throw Error(ErrorCode::invalid_argument, "element 0 is not the identity");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (table_[table_[i][j]][k] != table_[i][table_[j][k]])
          throw Error(ErrorCode::invalid_argument, "table is not associative");
  inverse_.assign(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (table_[i][j] == 0 && table_[j][i] == 0) inverse_[i] = j;
  for (std::size_t i = 0; i < n; ++i)
    if (inverse_[i] == n) throw Error(ErrorCode::invalid_argument, "element without inverse");
  for (std::size_t x : images_)
    if (x >= n) throw Error(ErrorCode::invalid_argument, "generator image out of range");

  // Shortlex-least spelling of each element by breadth-first search.
  canonical_.assign(n, Word{});
  std::vector<bool> seen(n, false);
  seen[0] = true;
  std::vector<std::size_t> frontier{0};
  std::size_t reached = 1;
  while (!frontier.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t x : frontier) {
      for (std::size_t g = 0; g < images_.size(); ++g) {
        for (bool inv : {false, true}) {
          std::size_t y = table_[x][inv ? inverse_[images_[g]] : images_[g]];
          if (seen[y]) continue;
          seen[y] = true;
          ++reached;
          canonical_[y] = canonical_[x];
          canonical_[y].letters.push_back(make_letter(g, inv));
          next.push_back(y);
        }
      }
    }
    frontier = std::move(next);
  }
  if (reached != n) throw Error(ErrorCode::invalid_argument, "generators do not generate the table group");
}

std::shared_ptr<const FiniteTableGroup> FiniteTableGroup::cyclic(std::size_t order, std::string name) {
  if (order == 0) throw Error(ErrorCode::invalid_argument, "cyclic group of order 0");
  std::vector<std::vector<std::size_t>> table(order, std::vector<std::size_t>(order));
  for (std::size_t i = 0; i < order; ++i)
    for (std::size_t j = 0; j < order; ++j) table[i][j] = (i + j) % order;
  return std::make_shared<const FiniteTableGroup>(std::move(table),
                                                  std::vector<std::size_t>{order > 1 ? 1u : 0u},
                                                  std::vector<std::string>{std::move(name)});
}

std::size_t FiniteTableGroup::element_of(std::span<const Letter> letters) const {
  check_letters(letters, num_generators());
  std::size_t x = 0;
  for (Letter l : letters) {
    std::size_t g = images_[generator_of(l)];
    x = table_[x][is_inverse(l) ? inverse_[g] : g];
  }
  return x;
}

Word FiniteTableGroup::normalize(std::span<const Letter> letters) const {
  return canonical_[element_of(letters)];
}

// ----------------------------------------------------------- RewritingGroup

namespace {

bool ends_with(const std::vector<Letter>& s, const std::vector<Letter>& suffix) {
  return suffix.size() <= s.size() && std::equal(suffix.begin(), suffix.end(), s.end() - static_cast<std::ptrdiff_t>(suffix.size()));
}

}  // namespace

RewritingGroup::RewritingGroup(std::vector<std::string> names, std::vector<RewritingRule> rules)
    : Group(std::move(names)), user_rules_(std::move(rules)) {
  for (const auto& r : user_rules_) {
    check_letters(r.lhs, num_generators());
    check_letters(r.rhs, num_generators());
    if (r.lhs.empty() || !shortlex_less(Word(r.rhs), Word(r.lhs)))
      throw Error(ErrorCode::non_confluent_rewriting, "rewriting rule is not shortlex-reducing");
  }
  for (std::size_t g = 0; g < num_generators(); ++g) {
    Letter l = make_letter(g);
    rules_.push_back({{l, -l}, {}});
    rules_.push_back({{-l, l}, {}});
  }
  rules_.insert(rules_.end(), user_rules_.begin(), user_rules_.end());
  check_local_confluence();
}

std::vector<Letter> RewritingGroup::reduce(std::vector<Letter> input) const {
  std::vector<Letter> todo(input.rbegin(), input.rend());
  std::vector<Letter> out;
  while (!todo.empty()) {
    out.push_back(todo.back());
    todo.pop_back();
    for (const auto& rule : rules_) {
      if (!ends_with(out, rule.lhs)) continue;
      out.resize(out.size() - rule.lhs.size());
      todo.insert(todo.end(), rule.rhs.rbegin(), rule.rhs.rend());
      break;
    }
  }
  return out;
}

void RewritingGroup::check_local_confluence() const {
  auto resolve = [&](const std::vector<Letter>& word, const std::vector<Letter>& left,
                     const std::vector<Letter>& right) {
    if (reduce(left) != reduce(right))
      throw Error(ErrorCode::non_confluent_rewriting,
                  "critical pair on '" + format_letters(word, generator_names()) + "' does not resolve");
  };
  for (const auto& r1 : rules_) {
    for (const auto& r2 : rules_) {
      const auto& l1 = r1.lhs;
      const auto& l2 = r2.lhs;
      // Overlaps: proper suffix of l1 equals proper prefix of l2.
      for (std::size_t k = 1; k < std::min(l1.size(), l2.size()); ++k) {
        if (!std::equal(l1.end() - static_cast<std::ptrdiff_t>(k), l1.end(), l2.begin())) continue;
        std::vector<Letter> word(l1);
        word.insert(word.end(), l2.begin() + static_cast<std::ptrdiff_t>(k), l2.end());
        std::vector<Letter> a(r1.rhs);
        a.insert(a.end(), l2.begin() + static_cast<std::ptrdiff_t>(k), l2.end());
        std::vector<Letter> b(l1.begin(), l1.end() - static_cast<std::ptrdiff_t>(k));
        b.insert(b.end(), r2.rhs.begin(), r2.rhs.end());
        resolve(word, a, b);
      }
      // Inclusions: l2 occurs inside l1.
      if (&r1 == &r2 || l2.size() > l1.size()) continue;
      for (std::size_t p = 0; p + l2.size() <= l1.size(); ++p) {
        if (!std::equal(l2.begin(), l2.end(), l1.begin() + static_cast<std::ptrdiff_t>(p))) continue;
        std::vector<Letter> b(l1.begin(), l1.begin() + static_cast<std::ptrdiff_t>(p));
        b.insert(b.end(), r2.rhs.begin(), r2.rhs.end());
        b.insert(b.end(), l1.begin() + static_cast<std::ptrdiff_t>(p + l2.size()), l1.end());
        resolve(l1, r1.rhs, b);
      }
    }
  }
}

Word RewritingGroup::normalize(std::span<const Letter> letters) const {
  check_letters(letters, num_generators());
  return Word(reduce(std::vector<Letter>(letters.begin(), letters.end())));
}

// -------------------------------------------------------------- inference

namespace {

std::vector<Letter> free_reduce(const std::vector<Letter>& w) {
  std::vector<Letter> out;
  for (Letter l : w) free_reduce_into(out, l);
  return out;
}

bool is_commutator(const std::vector<Letter>& r) {
  return r.size() == 4 && generator_of(r[0]) != generator_of(r[1]) && r[2] == -r[0] && r[3] == -r[1];
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

GroupPtr block_group(const std::vector<std::string>& names, const std::vector<std::vector<Letter>>& relators) {
  if (relators.empty()) return std::make_shared<const FreeGroup>(names);
  if (names.size() == 1) {
    long long m = 0;
    bool powers = true;
    for (const auto& r : relators) {
      long long e = 0;
      for (Letter l : r) e += is_inverse(l) ? -1 : 1;
      powers &= static_cast<std::size_t>(e < 0 ? -e : e) == r.size();
      m = std::gcd(m, e < 0 ? -e : e);
    }
    if (powers && m > 0) return FiniteTableGroup::cyclic(static_cast<std::size_t>(m), names[0]);
  }
  std::vector<RewritingRule> rules;
  for (const auto& r : relators) {
    rules.push_back({r, {}});
    rules.push_back({inverse_letters(r), {}});
  }
  try {
    return std::make_shared<const RewritingGroup>(names, std::move(rules));
  } catch (const Error& e) {
    throw Error(ErrorCode::unsupported_group,
                std::string("no built-in normal form for this presentation: ") + e.what());
  }
}

}  // namespace

GroupPtr infer_group(const Presentation& p) {
  const std::size_t n = p.generators.size();
  if (n == 0) throw Error(ErrorCode::invalid_argument, "presentation without generators");
  std::vector<std::vector<Letter>> relators;
  for (const auto& r : p.relators) {
    auto red = free_reduce(r);
    if (!red.empty()) relators.push_back(std::move(red));
  }
  std::set<std::pair<std::size_t, std::size_t>> commuting;
  for (const auto& r : relators) {
    if (!is_commutator(r)) continue;
    std::size_t a = generator_of(r[0]);
    std::size_t b = generator_of(r[1]);
    commuting.insert({std::min(a, b), std::max(a, b)});
  }
  UnionFind uf(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (!commuting.count({a, b})) uf.unite(a, b);
  for (const auto& r : relators) {
    if (is_commutator(r)) continue;
    for (Letter l : r) uf.unite(generator_of(r.front()), generator_of(l));
  }
  std::map<std::size_t, std::vector<std::size_t>> blocks;
  for (std::size_t g = 0; g < n; ++g) blocks[uf.find(g)].push_back(g);

  auto names = p.generator_names();
  auto local_relators = [&](const std::vector<std::size_t>& gens) {
    std::map<std::size_t, std::size_t> local;
    for (std::size_t i = 0; i < gens.size(); ++i) local[gens[i]] = i;
    std::vector<std::vector<Letter>> out;
    for (const auto& r : relators) {
      if (!local.count(generator_of(r.front()))) continue;
      bool inside = std::all_of(r.begin(), r.end(), [&](Letter l) { return local.count(generator_of(l)) > 0; });
      if (!inside) continue;  // commutator across blocks
      std::vector<Letter> lr;
      for (Letter l : r) lr.push_back(make_letter(local[generator_of(l)], is_inverse(l)));
      out.push_back(std::move(lr));
    }
    return out;
  };

  if (blocks.size() == 1) return block_group(names, relators);

  std::vector<GroupPtr> factors;
  std::vector<std::size_t> assignment(n);
  std::size_t f = 0;
  for (const auto& [root, gens] : blocks) {
    std::vector<std::string> bn;
    for (std::size_t g : gens) {
      bn.push_back(names[g]);
      assignment[g] = f;
    }
    factors.push_back(block_group(bn, local_relators(gens)));
    ++f;
  }
  return std::make_shared<const DirectProductGroup>(std::move(factors), names, std::move(assignment));
}

// ------------------------------------------------------------------- balls

std::vector<Word> enumerate_ball(const Group& g, std::size_t radius, std::size_t cap) {
  std::vector<Word> out{g.identity()};
  std::unordered_set<Word, WordHash> seen{g.identity()};
  std::vector<Word> level{g.identity()};
  std::vector<Word> gens;
  for (std::size_t i = 0; i < g.num_generators(); ++i) {
    gens.push_back(g.generator(i));
    gens.push_back(g.generator(i, true));
  }
  for (std::size_t r = 0; r < radius && !level.empty(); ++r) {
    std::vector<Word> next;
    for (const Word& w : level) {
      for (const Word& s : gens) {
        Word u = g.multiply(w, s);
        if (seen.insert(u).second) {
          next.push_back(std::move(u));
          if (seen.size() > cap)
            throw Error(ErrorCode::ball_too_large,
                        "ball of radius " + std::to_string(radius) + " exceeds " + std::to_string(cap) + " elements");
        }
      }
    }
    std::sort(next.begin(), next.end(), ShortlexLess{});
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

std::size_t free_sphere_size(std::size_t rank, std::size_t radius) {
  if (radius == 0) return 1;
  std::size_t s = 2 * rank;
  for (std::size_t k = 1; k < radius; ++k) s *= (2 * rank - 1);
  return s;
}

std::size_t free_ball_size(std::size_t rank, std::size_t radius) {
  std::size_t total = 0;
  for (std::size_t k = 0; k <= radius; ++k) total += free_sphere_size(rank, k);
  return total;
}

}  // namespace l2h
