#pragma once

// Group descriptors with decidable word arithmetic: free groups, direct
// products, finite groups given by a multiplication table, and groups given
// by a confluent shortlex-reducing rewriting system.

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "l2h/presentation.hpp"
#include "l2h/word.hpp"

namespace l2h {

enum class GroupKind { free, direct_product, rewriting, finite_table };

const char* group_kind_name(GroupKind kind);

class Group {
 public:
  virtual ~Group() = default;

  virtual GroupKind kind() const = 0;
  std::size_t num_generators() const noexcept { return names_.size(); }
  const std::vector<std::string>& generator_names() const noexcept { return names_; }

  virtual Word normalize(std::span<const Letter> letters) const = 0;
  virtual Word multiply(const Word& u, const Word& v) const;
  Word invert(const Word& u) const;
  /// Word length in the declared generating set.
  virtual std::size_t length(const Word& u) const { return u.size(); }

  Word identity() const { return Word{}; }
  Word generator(std::size_t i, bool inverse = false) const {
    Letter l = make_letter(i, inverse);
    return normalize(std::span<const Letter>(&l, 1));
  }

  std::string format(const Word& w) const { return format_letters(w.letters, names_); }
  Word parse_word(const std::string& text) const { return normalize(parse_letters(text, names_)); }

 protected:
  explicit Group(std::vector<std::string> names) : names_(std::move(names)) {}

 private:
  std::vector<std::string> names_;
};

using GroupPtr = std::shared_ptr<const Group>;

class FreeGroup final : public Group {
 public:
  explicit FreeGroup(std::size_t rank);
  FreeGroup(std::vector<std::string> names);

  GroupKind kind() const override { return GroupKind::free; }
  std::size_t rank() const noexcept { return num_generators(); }
  Word normalize(std::span<const Letter> letters) const override;
  Word multiply(const Word& u, const Word& v) const override;
};

class DirectProductGroup final : public Group {
 public:
  /// Without an explicit assignment factor i owns a contiguous generator
  /// block; generator_factor[g] otherwise names the factor of generator g
  /// (local order follows global order).
  explicit DirectProductGroup(std::vector<GroupPtr> factors, std::vector<std::string> names = {},
                              std::vector<std::size_t> generator_factor = {});

  GroupKind kind() const override { return GroupKind::direct_product; }
  Word normalize(std::span<const Letter> letters) const override;
  std::size_t length(const Word& u) const override;

  std::size_t num_factors() const noexcept { return factors_.size(); }
  const GroupPtr& factor(std::size_t i) const { return factors_.at(i); }
  std::size_t factor_of_generator(std::size_t g) const { return gen_factor_.at(g); }
  std::size_t local_index(std::size_t g) const { return gen_local_.at(g); }
  std::size_t global_generator(std::size_t factor, std::size_t local) const {
    return factor_gens_.at(factor).at(local);
  }

  /// Per-factor components of a normal form (in local generator indices).
  std::vector<Word> split(const Word& w) const;
  /// Index of the single factor a non-identity word lives in, if any.
  std::optional<std::size_t> single_factor(const Word& w) const;
  Word embed(std::size_t factor, const Word& local) const;

 private:
  std::vector<GroupPtr> factors_;
  std::vector<std::size_t> gen_factor_;
  std::vector<std::size_t> gen_local_;
  std::vector<std::vector<std::size_t>> factor_gens_;
};

class FiniteTableGroup final : public Group {
 public:
  /// Elements are 0..n-1 with 0 the identity; table[i][j] = i*j.
  FiniteTableGroup(std::vector<std::vector<std::size_t>> table,
                   std::vector<std::size_t> generator_images, std::vector<std::string> names);

  static std::shared_ptr<const FiniteTableGroup> cyclic(std::size_t order, std::string name);

  GroupKind kind() const override { return GroupKind::finite_table; }
  Word normalize(std::span<const Letter> letters) const override;

  std::size_t order() const noexcept { return table_.size(); }
  std::size_t element_of(std::span<const Letter> letters) const;
  const Word& canonical_word(std::size_t element) const { return canonical_.at(element); }
  const std::vector<std::vector<std::size_t>>& table() const noexcept { return table_; }
  const std::vector<std::size_t>& generator_images() const noexcept { return images_; }

 private:
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> images_;
  std::vector<std::size_t> inverse_;
  std::vector<Word> canonical_;
};

struct RewritingRule {
  std::vector<Letter> lhs;
  std::vector<Letter> rhs;
};

class RewritingGroup final : public Group {
 public:
  /// Rules must be shortlex-reducing; free cancellation rules are implicit.
  /// Throws NonConfluentRewriting when a critical pair fails to resolve.
  RewritingGroup(std::vector<std::string> names, std::vector<RewritingRule> rules);

  GroupKind kind() const override { return GroupKind::rewriting; }
  Word normalize(std::span<const Letter> letters) const override;
  const std::vector<RewritingRule>& rules() const noexcept { return user_rules_; }

 private:
  std::vector<Letter> reduce(std::vector<Letter> input) const;
  void check_local_confluence() const;

  std::vector<RewritingRule> user_rules_;
  std::vector<RewritingRule> rules_;
};

/// Recognizes free groups, direct products (commutator relators between
/// generator blocks), finite cyclic groups (a^m) and otherwise tries the
/// relators as a rewriting system.
GroupPtr infer_group(const Presentation& p);

/// Elements of length <= radius in breadth-first order, shortlex within a level.
std::vector<Word> enumerate_ball(const Group& g, std::size_t radius, std::size_t cap = 2'000'000);

/// Closed-form |B_R| for Free(n), n >= 1.
std::size_t free_ball_size(std::size_t rank, std::size_t radius);
std::size_t free_sphere_size(std::size_t rank, std::size_t radius);

}  // namespace l2h
