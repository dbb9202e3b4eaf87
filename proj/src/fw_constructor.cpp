#include "l2h/fw_constructor.hpp"

#include <algorithm>

#include "l2h/errors.hpp"

namespace l2h {
namespace {

using SparseVector = std::vector<std::pair<std::size_t, Rational>>;

const Rational kViolated(1, 2);
const Rational kSmall(1, 5);

std::vector<FiniteQuotient> quotient_chain(const Presentation& p, GroupPtr g, std::size_t count,
                                           std::size_t min_order) {
  auto chain = nested_cyclic_chain(p, g, count, min_order);
  if (chain.empty()) {
    QuotientOptions opts;
    opts.budget = count;
    chain = quotient_library(p, g, opts);
  }
  return chain;
}

// Induced map of the given top-degree chains through the regular module.
SparseMatrix induced_map(const ChainComplex& c, const std::vector<std::vector<GroupRingElement>>& columns,
                         const FiniteQuotient& q) {
  const std::size_t rows = c.ranks.at(c.top_degree());
  ChainComplex t;
  t.group = c.group;
  t.ranks = {rows, columns.size()};
  GroupRingMatrix b(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) b.at(i, j) = columns[j].at(i);
  t.boundaries.push_back(std::move(b));
  return induce(t, q).boundaries[0];
}

std::vector<SparseVector> induced_vectors(const ChainComplex& c, const std::vector<GroupRingElement>& column,
                                          const FiniteQuotient& q) {
  SparseMatrix m = induced_map(c, {column}, q).transpose();
  std::vector<SparseVector> out;
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(m.row(r));
  return out;
}

std::size_t top_kernel_dim(const ChainComplex& c, const FiniteQuotient& q, std::string* method) {
  const std::size_t top = c.top_degree();
  const std::size_t dim = c.ranks[top] * q.order;
  if (top == 0) return dim;
  RankResult r = rank(induce(c, q).boundaries[top - 1]);
  if (method && r.method == "modular") *method = "modular";
  return dim - r.rank;
}

bool non_increasing(const std::vector<LuckEstimate>& e) {
  for (std::size_t i = 1; i < e.size(); ++i)
    if (e[i].value > e[i - 1].value) return false;
  return true;
}

DegreeAssessment assess(std::size_t k, std::string complex, std::optional<SpectralCertificate> cert,
                        std::vector<LuckEstimate> estimates) {
  DegreeAssessment a;
  a.degree = k;
  a.complex = std::move(complex);
  a.certificate = std::move(cert);
  a.estimates = std::move(estimates);
  if (a.certificate && a.certificate->status == CertificateStatus::certified_invertible) {
    a.verdict = "certified";
    a.reason = "spectral gap certified";
  } else if (k == 0 && a.certificate && a.certificate->status == CertificateStatus::zero_evidence) {
    a.verdict = "violated";
    a.reason = "truncated Laplacian spectrum reaches 0 (amenability evidence)";
  } else if (k == 0) {
    // Normalized estimates tend to 0 in degree 0 for every infinite group.
    a.verdict = "unknown";
    a.reason = "degree 0 spectral certificate inconclusive";
  } else if (!a.estimates.empty() && a.estimates.back().value >= kViolated) {
    a.verdict = "violated";
    a.reason = "normalized Betti estimates stay away from 0 (" + to_string(a.estimates.back().value) + " at order " +
               std::to_string(a.estimates.back().quotient_order) + ")";
  } else if (!a.estimates.empty() && non_increasing(a.estimates) && a.estimates.back().value <= kSmall) {
    a.verdict = "evidence";
    a.reason = "normalized Betti estimates non-increasing, last " + to_string(a.estimates.back().value);
  } else {
    a.verdict = "unknown";
    a.reason = a.estimates.empty() ? "no finite quotients available" : "estimates do not settle";
  }
  return a;
}

std::optional<SpectralCertificate> try_certificate(const ChainComplex& c, std::size_t k, GapMethod method,
                                                   const SpectralBudget& budget, std::vector<std::string>* notes) {
  try {
    LaplacianOperator lap = laplacian(c, k, budget.limits);
    return certify_gap(*c.group, lap.matrix, method, budget, k);
  } catch (const Error& e) {
    if (notes) notes->push_back("degree " + std::to_string(k) + " certificate skipped: " + e.what());
    return std::nullopt;
  }
}

// Largest radius whose ball stays within `cap` elements.
std::size_t wide_radius(const Group& g, std::size_t cap) {
  std::size_t radius = 0, previous = 0;
  for (std::size_t r = 1; r < 100000; ++r) {
    std::size_t size = 0;
    try {
      size = enumerate_ball(g, r, cap).size();
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ball_too_large) throw;
      break;
    }
    if (size > cap) break;
    radius = r;
    if (size == previous) break;
    previous = size;
  }
  return radius;
}

std::vector<std::vector<GroupRingElement>> columns_of(const std::vector<KernelCycle>& cycles,
                                                      const std::vector<std::size_t>& indices) {
  std::vector<std::vector<GroupRingElement>> out;
  for (auto i : indices) out.push_back(cycles.at(i).column);
  return out;
}

}  // namespace

SpectralBudget reduced_budget() {
  SpectralBudget b;
  b.max_power = 4;
  b.dense_dim = 600;
  b.truncation_cap = 20000;
  b.limits = {20'000, 4'000'000};
  return b;
}

const char* verdict_name(HypothesisVerdict v) {
  switch (v) {
    case HypothesisVerdict::satisfied: return "Satisfied";
    case HypothesisVerdict::satisfied_evidence: return "SatisfiedEvidence";
    case HypothesisVerdict::violated: return "Violated";
    case HypothesisVerdict::unknown: return "Unknown";
  }
  return "Unknown";
}

std::size_t default_support_radius(const ChainComplex& c, std::size_t budget) {
  const std::size_t top = c.top_degree();
  const std::size_t cells = std::max<std::size_t>(1, c.ranks.at(top));
  std::size_t longest = 0;
  if (top >= 1) {
    const auto& b = c.boundary(top);
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j)
        for (const auto& [w, q] : b.at(i, j).terms()) longest = std::max(longest, w.letters.size());
  }
  const std::size_t cap = std::max<std::size_t>(1, longest + 1);
  const std::size_t ball_cap = std::max<std::size_t>(1, budget / cells);
  std::size_t radius = 1;
  for (std::size_t r = 1; r <= cap; ++r) {
    try {
      if (enumerate_ball(*c.group, r, ball_cap).size() > ball_cap) break;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ball_too_large) throw;
      break;
    }
    radius = r;
  }
  return radius;
}

std::vector<KernelCycle> find_kernel_cycles(const ChainComplex& c, std::size_t radius, std::size_t limit) {
  const std::size_t top = c.top_degree();
  if (top == 0 || c.ranks[top] == 0) return {};
  std::vector<Rational> scalars;
  auto basis = bounded_kernel(*c.group, c.boundary(top), enumerate_ball(*c.group, radius), &scalars);
  std::vector<KernelCycle> out;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    KernelCycle k;
    k.column = std::move(basis[i]);
    k.scalar = scalars.at(i);
    for (const auto& e : k.column) k.support += e.support_size();
    out.push_back(std::move(k));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const KernelCycle& a, const KernelCycle& b) { return a.support < b.support; });
  if (limit && out.size() > limit) out.resize(limit);
  return out;
}

Selection select_basis_candidates(const ChainComplex& c, const std::vector<KernelCycle>& candidates,
                                  const std::vector<FiniteQuotient>& quotients) {
  if (quotients.empty()) throw Error(ErrorCode::invalid_argument, "candidate selection needs a finite quotient");
  Selection out;
  const FiniteQuotient& q0 = quotients.front();
  const std::size_t rows = c.ranks.at(c.top_degree());
  const std::size_t target = top_kernel_dim(c, q0, nullptr);
  ModularSpan span(rows * q0.order);
  for (std::size_t i = 0; i < candidates.size() && span.rank() < target; ++i) {
    ++out.considered;
    ModularSpan trial = span;
    std::size_t gain = trial.add(induced_vectors(c, candidates[i].column, q0));
    if (2 * gain >= q0.order) {
      span = std::move(trial);
      out.indices.push_back(i);
    }
  }
  const auto chosen = columns_of(candidates, out.indices);
  for (const auto& q : quotients) {
    QuotientDiagnostics d;
    d.label = q.label;
    d.order = q.order;
    d.rank_method = "exact";
    d.domain = chosen.size() * q.order;
    d.kernel_dim = top_kernel_dim(c, q, &d.rank_method);
    if (!chosen.empty()) {
      RankResult r = rank(induced_map(c, chosen, q));
      d.rank = r.rank;
      if (r.method == "modular") d.rank_method = "modular";
    }
    d.cokernel = d.kernel_dim - d.rank;
    d.defect = d.domain - d.rank;
    out.diagnostics.push_back(std::move(d));
  }
  return out;
}

HypothesisReport check_hypothesis(const Presentation& p, GroupPtr g, const HypothesisOptions& opts) {
  HypothesisReport report;
  ChainComplex y = presentation_complex(p, g);
  auto chain = quotient_chain(p, g, opts.quotients, opts.min_order);
  for (const auto& q : chain) report.quotient_labels.push_back(q.label + " (order " + std::to_string(q.order) + ")");

  ChainComplex filled = y;
  std::string filled_label = "presentation complex";
  if (y.ranks.size() > 2 && y.ranks[2] > 0) {
    const std::size_t radius = opts.support_radius ? opts.support_radius : default_support_radius(y, opts.unknown_budget);
    auto cycles = find_kernel_cycles(y, radius);
    if (!cycles.empty()) {
      filled = attach_cells(y, 3, columns_of(cycles, [&] {
                              std::vector<std::size_t> all(cycles.size());
                              for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
                              return all;
                            }()));
      filled_label = "presentation complex with " + std::to_string(cycles.size()) + " kernel cycles filled (L=" +
                     std::to_string(radius) + ")";
    }
  }

  std::vector<std::vector<LuckEstimate>> est(3), est_filled(3);
  for (const auto& q : chain) {
    auto a = luck_estimates(y, q);
    auto b = luck_estimates(filled, q);
    for (std::size_t k = 0; k < 3; ++k) {
      if (k < a.size()) est[k].push_back(a[k]);
      if (k < b.size()) est_filled[k].push_back(b[k]);
    }
  }

  std::vector<std::string> ignored;
  auto cert0 = try_certificate(y, 0, opts.method, opts.budget, &ignored);
  if (cert0 && cert0->status == CertificateStatus::inconclusive) {
    SpectralBudget wide = opts.budget;
    wide.max_radius = wide_radius(*g, opts.wide_truncation);
    if (wide.max_radius > cert0->radius) {
      auto retry = try_certificate(y, 0, opts.method, wide, &ignored);
      if (retry) cert0 = std::move(retry);
    }
  }
  report.degrees.push_back(assess(0, "presentation complex", std::move(cert0), est[0]));
  report.degrees.push_back(
      assess(1, "presentation complex", try_certificate(y, 1, opts.method, opts.high_budget, &ignored), est[1]));
  report.degrees.push_back(
      assess(2, filled_label, try_certificate(y, 2, opts.method, opts.high_budget, &ignored), est_filled[2]));

  bool all_certified = true, all_good = true;
  for (const auto& d : report.degrees) {
    if (d.verdict == "violated" && !report.violating_degree) report.violating_degree = d.degree;
    all_certified = all_certified && d.verdict == "certified";
    all_good = all_good && (d.verdict == "certified" || d.verdict == "evidence");
  }
  if (report.violating_degree)
    report.verdict = HypothesisVerdict::violated;
  else if (all_certified)
    report.verdict = HypothesisVerdict::satisfied;
  else if (all_good)
    report.verdict = HypothesisVerdict::satisfied_evidence;
  else
    report.verdict = HypothesisVerdict::unknown;
  return report;
}

KervaireReport kervaire_integral_check(const ChainComplex& base, const ChainComplex& built) {
  KervaireReport r;
  r.before = integral_homology(base);
  r.after = integral_homology(built);
  const std::size_t n = std::max(r.before.size(), r.after.size());
  r.agrees_below_two = true;
  for (std::size_t k = 0; k < n; ++k) {
    const std::string a = k < r.before.size() ? r.before[k].to_string() : "0";
    const std::string b = k < r.after.size() ? r.after[k].to_string() : "0";
    if (a == b) {
      r.statements.push_back("H_" + std::to_string(k) + " = " + b + " (unchanged)");
    } else {
      r.statements.push_back("H_" + std::to_string(k) + ": " + a + " -> " + b);
      if (k < 2) r.agrees_below_two = false;
    }
  }
  return r;
}

ConstructionRecord construct(const Presentation& p, GroupPtr g, const ConstructionParams& params) {
  ConstructionRecord rec;
  HypothesisOptions hopts = params.hypothesis;
  hopts.method = params.method;
  hopts.budget = params.budget;
  hopts.high_budget = params.high_budget;
  hopts.unknown_budget = params.unknown_budget;
  if (params.support_radius) hopts.support_radius = params.support_radius;
  rec.hypothesis = check_hypothesis(p, g, hopts);
  if (rec.hypothesis.verdict == HypothesisVerdict::violated && !params.force) {
    rec.status = "FailedHypothesis";
    rec.notes.push_back("hypothesis violated in degree " + std::to_string(*rec.hypothesis.violating_degree) + ": " +
                        rec.hypothesis.degrees[*rec.hypothesis.violating_degree].reason);
    return rec;
  }
  if (rec.hypothesis.verdict == HypothesisVerdict::violated)
    rec.notes.push_back("hypothesis violated; construction forced");

  ChainComplex y = presentation_complex(p, g);
  rec.wedge_count = params.wedge_count.value_or(0);
  ChainComplex ys = wedge_spheres(y, rec.wedge_count);
  auto chain = quotient_chain(p, g, params.quotients, params.min_order);
  if (chain.empty()) throw Error(ErrorCode::unsupported_group, "no finite quotients available for verification");

  std::size_t radius = params.support_radius ? params.support_radius : default_support_radius(ys, params.unknown_budget);
  const std::size_t radius_cap = 2 * radius;
  for (;;) {
    rec.support_radius = radius;
    rec.candidates = find_kernel_cycles(ys, radius);
    rec.selection = select_basis_candidates(ys, rec.candidates, chain);
    const auto& d0 = rec.selection.diagnostics.front();
    if (Rational(static_cast<unsigned long>(d0.cokernel), static_cast<unsigned long>(d0.order)) <= kSmall) break;
    if (2 * radius > radius_cap) {
      if (rec.selection.indices.empty())
        throw Error(ErrorCode::no_candidate_subset,
                    "no kernel cycle within radius " + std::to_string(radius) + " reduces the top homology");
      rec.notes.push_back("kernel cycles up to radius " + std::to_string(radius) + " leave normalized cokernel " +
                          std::to_string(d0.cokernel) + "/" + std::to_string(d0.order));
      break;
    }
    radius *= 2;
    rec.notes.push_back("support radius doubled to " + std::to_string(radius));
  }

  const auto chosen = columns_of(rec.candidates, rec.selection.indices);
  rec.complex = chosen.empty() ? ys : attach_cells(ys, 3, chosen);
  verify_complex(rec.complex);
  rec.boundary_square_zero = true;

  rec.certificates.clear();
  for (std::size_t k = 0; k <= 3 && k <= rec.complex.top_degree(); ++k)
    if (auto c = try_certificate(rec.complex, k, params.method, k == 0 ? params.budget : params.high_budget,
                                 &rec.notes))
      rec.certificates.push_back(std::move(*c));

  bool unchanged = true;
  rec.betti_trend_ok = true;
  std::vector<Rational> previous;
  for (const auto& q : chain) {
    BettiRow row;
    row.label = q.label;
    row.order = q.order;
    BettiNumbers before = betti_numbers(induce(ys, q));
    BettiNumbers after = betti_numbers(induce(rec.complex, q));
    row.before = before.values;
    row.after = after.values;
    row.rank_method = (before.rank_method == "modular" || after.rank_method == "modular") ? "modular" : "exact";
    for (std::size_t k = 0; k < row.after.size(); ++k) {
      Rational v(static_cast<unsigned long>(row.after[k]), static_cast<unsigned long>(q.order));
      v.canonicalize();
      row.normalized.push_back(v);
      if (v > kSmall) rec.betti_trend_ok = false;
      if (k < previous.size() && v > previous[k]) rec.betti_trend_ok = false;
    }
    for (std::size_t k = 0; k < 2; ++k)
      if (row.before.at(k) != row.after.at(k)) unchanged = false;
    previous = row.normalized;
    rec.betti_table.push_back(std::move(row));
  }

  KervaireReport kv = kervaire_integral_check(ys, rec.complex);
  rec.integral_homology = kv.after;
  rec.low_degrees_unchanged = unchanged && kv.agrees_below_two;
  rec.status = "Constructed";
  return rec;
}

}  // namespace l2h
