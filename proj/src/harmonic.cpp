#include "qehrhart/harmonic.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace qehrhart {

namespace {

// Number of exponent vectors with `parts` entries summing to `sum`.
std::size_t compositions(std::int64_t sum, std::size_t parts) {
  if (parts == 0) return sum == 0 ? 1 : 0;
  return binomial(sum + static_cast<std::int64_t>(parts) - 1, parts - 1).get_ui();
}

// Position of e within monomials_of_degree(n, |e|).
std::size_t monomial_index(const IntVector& e) {
  std::size_t index = 0;
  std::int64_t left = total_degree(e);
  for (std::size_t i = 0; i + 1 < e.size(); ++i) {
    for (std::int64_t k = 0; k < e[i]; ++k) index += compositions(left - k, e.size() - i - 1);
    left -= e[i];
  }
  return index;
}

std::int64_t max_shifted_degree(const LatticePointSet& z) {
  const IntVector lo = z.min_corner();
  std::int64_t best = 0;
  for (const auto& p : z.points) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < z.dim; ++i) s += p[i] - lo[i];
    best = std::max(best, s);
  }
  return best;
}

Integer shifted_binomial(const IntVector& point, const IntVector& delta) {
  Integer out = 1;
  for (std::size_t i = 0; i < point.size(); ++i) {
    out *= binomial(point[i], static_cast<std::uint64_t>(delta[i]));
    if (out == 0) break;
  }
  return out;
}

Integer power_product(const IntVector& point, const IntVector& exponent) {
  Integer out = 1;
  Integer t;
  for (std::size_t i = 0; i < point.size(); ++i) {
    const Integer base(static_cast<long>(point[i]));
    mpz_pow_ui(t.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(exponent[i]));
    out *= t;
  }
  return out;
}

// Evaluation matrix of the given monomials on Z: rows are points.
RationalMatrix evaluation_matrix(const LatticePointSet& z, const std::vector<IntVector>& monomials) {
  RationalMatrix m(z.size(), monomials.size());
  for (std::size_t r = 0; r < z.size(); ++r)
    for (std::size_t c = 0; c < monomials.size(); ++c) m(r, c) = Rational(power_product(z.points[r], monomials[c]));
  return m;
}

std::vector<std::size_t> trim_row(std::vector<std::size_t> row) {
  while (row.size() > 1 && row.back() == 0) row.pop_back();
  if (row.empty()) row.push_back(0);
  return row;
}

std::vector<std::size_t> dims_from_filtration(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> row;
  for (std::size_t d = 0; d + 1 < dims.size(); ++d) row.push_back(dims[d] - dims[d + 1]);
  return trim_row(std::move(row));
}

HarmonicBasis basis_from_rows(std::size_t n, const std::vector<std::pair<std::int64_t, RationalVector>>& rows) {
  HarmonicBasis out;
  for (const auto& [d, coords] : rows) {
    if (out.graded_parts.size() <= static_cast<std::size_t>(d)) out.graded_parts.resize(d + 1);
    out.graded_parts[d].push_back(from_homogeneous_coordinates(n, d, coords));
  }
  return out;
}

}  // namespace

std::string_view to_string(Method method) {
  switch (method) {
    case Method::filtration: return "filtration";
    case Method::harmonic: return "harmonic";
    case Method::dual: return "dual";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  if (name == "filtration") return Method::filtration;
  if (name == "harmonic") return Method::harmonic;
  if (name == "dual") return Method::dual;
  throw std::invalid_argument("unknown method: " + std::string(name));
}

RationalVector homogeneous_coordinates(const MultiPoly& f, std::int64_t d) {
  RationalVector out(compositions(d, f.dim()));
  for (const auto& [e, c] : f.terms()) {
    if (total_degree(e) != d) throw std::invalid_argument("homogeneous_coordinates: term of the wrong degree");
    out[monomial_index(e)] = c;
  }
  return out;
}

MultiPoly from_homogeneous_coordinates(std::size_t n, std::int64_t d, std::span<const Rational> coords) {
  const auto monomials = monomials_of_degree(n, d);
  if (coords.size() != monomials.size()) throw std::invalid_argument("from_homogeneous_coordinates: length mismatch");
  MultiPoly out(n);
  for (std::size_t i = 0; i < monomials.size(); ++i) out.add_term(monomials[i], coords[i]);
  return out;
}

MultiPoly laurent_from_coefficients(const LatticePointSet& support, std::span<const Rational> coefficients) {
  if (coefficients.size() != support.size()) throw std::invalid_argument("laurent_from_coefficients: length mismatch");
  MultiPoly out(support.dim);
  for (std::size_t j = 0; j < support.size(); ++j) out.add_term(support.points[j], coefficients[j]);
  return out;
}

MultiPoly FiltrationTable::element(std::size_t d, std::size_t row) const {
  return laurent_from_coefficients(support, bases.at(d).row(row));
}

// ---------------------------------------------------------------------------
// Filtration pipeline.
//
// x^{z_j} is first multiplied by x^{-min}, a unit at e, so the exponents
// s_j = z_j - min are nonnegative. Substituting x = 1 + u, the u^delta
// coefficient of sum_j c_j x^{s_j} is sum_j c_j binom(s_j, delta). F_d is the
// kernel of that matrix restricted to |delta| < d.

RationalMatrix filtration_piece(const LatticePointSet& support, std::int64_t d, const ComputeBudget& budget) {
  const LatticePointSet shifted = support.translated([&] {
    IntVector lo = support.min_corner();
    for (auto& x : lo) x = -x;
    return lo;
  }());
  const auto deltas = monomials_up_to(support.dim, d - 1);
  budget.check(deltas.size(), support.size(), "filtration_piece");
  RationalMatrix conditions(deltas.size(), support.size());
  for (std::size_t r = 0; r < deltas.size(); ++r)
    for (std::size_t c = 0; c < support.size(); ++c)
      conditions(r, c) = Rational(shifted_binomial(shifted.points[c], deltas[r]));
  return reduced_echelon(kernel_basis(conditions)).basis;
}

FiltrationTable filtration_table(const LatticePointSet& support, bool with_bases, const ComputeBudget& budget) {
  FiltrationTable table;
  table.support = support;
  if (support.empty()) {
    table.dims = {0};
    if (with_bases) table.bases.emplace_back(0, 0);
    return table;
  }
  // A nonzero polynomial vanishes at e to order at most its total degree.
  const std::int64_t cap = 1 + max_shifted_degree(support);
  for (std::int64_t d = 0;; ++d) {
    if (d > cap) throw std::logic_error("filtration_table: kernel still nonzero past the degree cap");
    RationalMatrix piece = filtration_piece(support, d, budget);
    table.dims.push_back(piece.rows());
    if (with_bases) table.bases.push_back(std::move(piece));
    if (table.dims.back() == 0) break;
  }
  return table;
}

FiltrationTable filtration_dims(const Polytope& p, std::int64_t m, bool with_bases, const ComputeBudget& budget) {
  if (m < 0) throw std::invalid_argument("filtration_dims: m must be nonnegative");
  FiltrationTable table =
      filtration_table(lattice_points(dilate(p, Rational(static_cast<long>(m))), budget), with_bases, budget);
  table.m = m;
  return table;
}

// ---------------------------------------------------------------------------
// Harmonic pipeline: lowest parts of the span of (1 + x)^a.

std::vector<std::size_t> HarmonicBasis::dims() const {
  std::vector<std::size_t> out;
  for (const auto& part : graded_parts) out.push_back(part.size());
  return out;
}

std::size_t HarmonicBasis::total_dim() const {
  std::size_t s = 0;
  for (const auto& part : graded_parts) s += part.size();
  return s;
}

HarmonicBasis harmonic_basis(const LatticePointSet& z, const ComputeBudget& budget) {
  if (z.empty()) throw std::invalid_argument("harmonic_basis: empty point set");
  // Lowest parts of the span live in degree <= max shifted degree, so this
  // truncation never drops one.
  const std::int64_t cutoff = 1 + max_shifted_degree(z);
  const auto columns = monomials_up_to(z.dim, cutoff);
  budget.check(z.size(), columns.size(), "harmonic_basis");

  RationalMatrix expansions(z.size(), columns.size());
  for (std::size_t r = 0; r < z.size(); ++r) {
    const TruncatedSeries s = shift_expand(z.points[r], cutoff);
    for (const auto& [e, c] : s.poly().terms()) {
      const auto it = std::lower_bound(columns.begin(), columns.end(), e, GradedLexLess{});
      expansions(r, static_cast<std::size_t>(it - columns.begin())) = c;
    }
  }
  const EchelonForm form = reduced_echelon(expansions);
  if (form.rank != z.size()) throw std::logic_error("harmonic_basis: expansions are not independent");

  std::vector<std::pair<std::int64_t, RationalVector>> rows;
  for (std::size_t i = 0; i < form.rank; ++i) {
    const std::int64_t d = total_degree(columns[form.pivot_cols[i]]);
    MultiPoly lowest(z.dim);
    for (std::size_t c = form.pivot_cols[i]; c < columns.size() && total_degree(columns[c]) == d; ++c)
      lowest.add_term(columns[c], form.basis(i, c));
    rows.emplace_back(d, homogeneous_coordinates(lowest, d));
  }
  return basis_from_rows(z.dim, rows);
}

// ---------------------------------------------------------------------------
// gr I(Z) pipeline: evaluation-matrix ranks and apolarity kernels.

std::vector<std::size_t> gr_hilbert(const LatticePointSet& z, const ComputeBudget& budget) {
  if (z.empty()) return {0};
  std::vector<std::size_t> out;
  std::size_t previous = 0;
  for (std::int64_t d = 0; previous < z.size(); ++d) {
    const auto monomials = monomials_up_to(z.dim, d);
    budget.check(z.size(), monomials.size(), "gr_hilbert");
    const std::size_t r = rank(evaluation_matrix(z, monomials));
    out.push_back(r - previous);
    previous = r;
  }
  return out;
}

std::vector<MultiPoly> gr_ideal_basis(const LatticePointSet& z, std::int64_t d, const ComputeBudget& budget) {
  if (d < 0) throw std::invalid_argument("gr_ideal_basis: negative degree");
  const auto monomials = monomials_up_to(z.dim, d);
  budget.check(z.size(), monomials.size(), "gr_ideal_basis");
  RationalMatrix vanishing = kernel_basis(evaluation_matrix(z, monomials));

  // Keep only the degree-d coordinates: the leading forms.
  const std::size_t top = monomials.size() - compositions(d, z.dim);
  RationalMatrix forms(0, monomials.size() - top);
  for (std::size_t i = 0; i < vanishing.rows(); ++i) {
    const auto row = vanishing.row(i);
    forms.append_row(row.subspan(top));
  }
  const EchelonForm form = reduced_echelon(forms);
  std::vector<MultiPoly> out;
  for (std::size_t i = 0; i < form.rank; ++i) out.push_back(from_homogeneous_coordinates(z.dim, d, form.basis.row(i)));
  return out;
}

HarmonicBasis harmonic_dual(const LatticePointSet& z, const ComputeBudget& budget) {
  if (z.empty()) throw std::invalid_argument("harmonic_dual: empty point set");
  std::vector<std::vector<MultiPoly>> ideal_forms;
  std::vector<std::pair<std::int64_t, RationalVector>> rows;
  const auto safety = static_cast<std::int64_t>(z.size()) + 1;
  for (std::int64_t d = 0;; ++d) {
    if (d > safety) throw std::logic_error("harmonic_dual: gr I(Z) never filled a degree");
    ideal_forms.push_back(gr_ideal_basis(z, d, budget));
    const auto domain = monomials_of_degree(z.dim, d);
    // Once gr I(Z) contains every form of degree d it contains every higher
    // degree too, so V_Z has nothing left.
    if (ideal_forms.back().size() == domain.size()) break;

    RationalMatrix pairing(0, domain.size());
    for (std::int64_t e = 0; e <= d; ++e) {
      const std::size_t image_size = compositions(d - e, z.dim);
      for (const auto& f : ideal_forms[e]) {
        budget.check(pairing.rows() + image_size, domain.size(), "harmonic_dual");
        RationalMatrix block(image_size, domain.size());
        for (std::size_t c = 0; c < domain.size(); ++c) {
          const MultiPoly image = apply_diff(f, MultiPoly::monomial(domain[c]));
          for (const auto& [ex, coef] : image.terms()) block(monomial_index(ex), c) = coef;
        }
        for (std::size_t r = 0; r < block.rows(); ++r) pairing.append_row(block.row(r));
      }
    }
    const EchelonForm harmonics = reduced_echelon(kernel_basis(pairing));
    for (std::size_t i = 0; i < harmonics.rank; ++i) rows.emplace_back(d, harmonics.basis.row_vector(i));
  }
  return basis_from_rows(z.dim, rows);
}

// ---------------------------------------------------------------------------

std::vector<std::size_t> BigradedTable::row_sums() const {
  std::vector<std::size_t> out;
  for (const auto& row : rows) {
    std::size_t s = 0;
    for (auto v : row) s += v;
    out.push_back(s);
  }
  return out;
}

namespace {

std::vector<std::size_t> q_row(const Polytope& p, std::int64_t m, Method method, const ComputeBudget& budget) {
  const LatticePointSet z = lattice_points(dilate(p, Rational(static_cast<long>(m))), budget);
  if (z.empty()) return {0};
  switch (method) {
    case Method::filtration: return dims_from_filtration(filtration_table(z, false, budget).dims);
    case Method::harmonic: return trim_row(harmonic_basis(z, budget).dims());
    case Method::dual: return trim_row(harmonic_dual(z, budget).dims());
  }
  throw std::logic_error("q_row: unknown method");
}

}  // namespace

BigradedTable q_ehrhart(const Polytope& p, std::int64_t m_max, Method method, const ComputeBudget& budget,
                        unsigned threads) {
  if (m_max < 0) throw std::invalid_argument("q_ehrhart: m_max must be nonnegative");
  const auto count = static_cast<std::size_t>(m_max + 1);
  BigradedTable table;
  table.rows.resize(count);
  if (threads <= 1) {
    for (std::size_t m = 0; m < count; ++m) table.rows[m] = q_row(p, static_cast<std::int64_t>(m), method, budget);
    return table;
  }

  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  // Largest dilations first: they dominate the running time.
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      const std::size_t m = count - 1 - i;
      try {
        table.rows[m] = q_row(p, static_cast<std::int64_t>(m), method, budget);
      } catch (...) {
        errors[m] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(threads, count); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return table;
}

// ---------------------------------------------------------------------------
// Randomized checks.

std::optional<bool> lemma32_compare(const LatticePointSet& z, const std::vector<Rational>& coefficients) {
  if (coefficients.size() != z.size()) throw std::invalid_argument("lemma32_compare: one coefficient per point");
  if (std::all_of(coefficients.begin(), coefficients.end(), [](const Rational& c) { return c == 0; }))
    return std::nullopt;
  const std::int64_t cutoff = 1 + max_shifted_degree(z);
  TruncatedSeries exponential(z.dim, cutoff);
  TruncatedSeries binomial_sum(z.dim, cutoff);
  for (std::size_t j = 0; j < z.size(); ++j) {
    TruncatedSeries e = exp_expand(z.points[j], cutoff);
    TruncatedSeries b = shift_expand(z.points[j], cutoff);
    e *= coefficients[j];
    b *= coefficients[j];
    exponential += e;
    binomial_sum += b;
  }
  if (exponential.is_zero() || binomial_sum.is_zero()) return exponential.is_zero() && binomial_sum.is_zero();
  const LowestPart a = lowest_part(exponential);
  const LowestPart b = lowest_part(binomial_sum);
  return a.degree == b.degree && a.part == b.part;
}

Lemma32Report lemma32_check(const LatticePointSet& z, std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("lemma32_check: trials must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-5, 5);
  Lemma32Report report;
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<Rational> c(z.size());
    do {
      for (auto& x : c) x = coef(rng);
    } while (std::all_of(c.begin(), c.end(), [](const Rational& x) { return x == 0; }) && !z.empty());
    ++report.trials;
    const auto verdict = lemma32_compare(z, c);
    if (!verdict) {
      ++report.skipped;
    } else if (!*verdict) {
      ++report.mismatches;
      std::ostringstream os;
      os << "trial " << t << ": coefficients";
      for (const auto& x : c) os << ' ' << x.get_str();
      report.failures.push_back(os.str());
    }
  }
  return report;
}

namespace {

struct DilationData {
  FiltrationTable filtration;
  std::vector<EchelonForm> harmonic;  // per degree, over monomials_of_degree
};

DilationData dilation_data(const Polytope& p, std::int64_t m, const ComputeBudget& budget) {
  DilationData data;
  data.filtration = filtration_dims(p, m, true, budget);
  if (data.filtration.support.empty()) return data;
  const HarmonicBasis h = harmonic_basis(data.filtration.support, budget);
  for (std::size_t d = 0; d < h.graded_parts.size(); ++d) {
    RationalMatrix rows(0, compositions(static_cast<std::int64_t>(d), p.dim()));
    for (const auto& f : h.graded_parts[d]) rows.append_row(homogeneous_coordinates(f, static_cast<std::int64_t>(d)));
    data.harmonic.push_back(reduced_echelon(rows));
  }
  return data;
}

bool in_harmonic_piece(const DilationData& data, const MultiPoly& f, std::int64_t d) {
  if (d < 0 || static_cast<std::size_t>(d) >= data.harmonic.size()) return f.is_zero();
  return in_row_space(homogeneous_coordinates(f, d), data.harmonic[static_cast<std::size_t>(d)]);
}

// Coefficient vector of f over `support`, or nullopt if f has a term outside it.
std::optional<RationalVector> coordinates_over(const LatticePointSet& support, const MultiPoly& f) {
  RationalVector out(support.size());
  for (const auto& [e, c] : f.terms()) {
    const auto it = std::lower_bound(support.points.begin(), support.points.end(), e);
    if (it == support.points.end() || *it != e) return std::nullopt;
    out[static_cast<std::size_t>(it - support.points.begin())] = c;
  }
  return out;
}

}  // namespace

MultiplicativityReport multiplicativity_check(const Polytope& p, std::int64_t m_max, std::size_t samples,
                                              std::uint64_t seed, const ComputeBudget& budget) {
  if (m_max < 2) throw std::invalid_argument("multiplicativity_check: m_max must be at least 2");
  std::vector<DilationData> data;
  for (std::int64_t m = 0; m <= m_max; ++m) data.push_back(dilation_data(p, m, budget));

  std::vector<std::int64_t> usable;
  for (std::int64_t m = 0; m <= m_max; ++m)
    if (!data[m].filtration.support.empty()) usable.push_back(m);
  MultiplicativityReport report;
  if (usable.empty()) return report;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-5, 5);
  auto pick = [&](std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); };

  auto random_element = [&](const DilationData& dd, std::int64_t d) {
    const RationalMatrix& basis = dd.filtration.bases[static_cast<std::size_t>(d)];
    RationalVector c(dd.filtration.support.size());
    MultiPoly f(p.dim());
    while (f.is_zero()) {
      std::fill(c.begin(), c.end(), Rational(0));
      for (std::size_t r = 0; r < basis.rows(); ++r) {
        const Rational w = coef(rng);
        if (w == 0) continue;
        for (std::size_t j = 0; j < c.size(); ++j) c[j] += w * basis(r, j);
      }
      f = laurent_from_coefficients(dd.filtration.support, c);
    }
    return f;
  };

  while (report.samples < samples) {
    const std::int64_t m1 = usable[static_cast<std::size_t>(pick(0, static_cast<std::int64_t>(usable.size()) - 1))];
    std::vector<std::int64_t> partners;
    for (auto m : usable)
      if (m1 + m <= m_max && !data[m1 + m].filtration.support.empty()) partners.push_back(m);
    if (partners.empty()) continue;
    const std::int64_t m2 = partners[static_cast<std::size_t>(pick(0, static_cast<std::int64_t>(partners.size()) - 1))];
    const DilationData& a = data[m1];
    const DilationData& b = data[m2];
    const DilationData& ab = data[m1 + m2];
    const std::int64_t d1 = pick(0, a.filtration.max_order());
    const std::int64_t d2 = pick(0, b.filtration.max_order());
    const MultiPoly f = random_element(a, d1);
    const MultiPoly g = random_element(b, d2);
    const MultiPoly fg = f * g;
    ++report.samples;

    std::ostringstream where;
    where << "(m1,d1)=(" << m1 << "," << d1 << ") (m2,d2)=(" << m2 << "," << d2 << ") f=" << f.to_string()
          << " g=" << g.to_string();

    // Filtration: f g in F_{m1+m2, d1+d2}.
    const std::int64_t target = d1 + d2;
    const auto coords = coordinates_over(ab.filtration.support, fg);
    bool in_piece = coords.has_value();
    if (in_piece) {
      if (target > ab.filtration.max_order()) {
        in_piece = false;
      } else {
        in_piece = in_row_space(*coords, ab.filtration.bases[static_cast<std::size_t>(target)]);
      }
    }
    const auto order_fg = vanishing_order(fg);
    if (!in_piece || !order_fg || *order_fg < target) {
      ++report.filtration_violations;
      report.failures.push_back("product outside F_{m,d}: " + where.str());
      continue;
    }

    // Associated graded: lowest parts multiply and land in the harmonic space.
    const LowestPart lf = lowest_part(expand_at_one(f));
    const LowestPart lg = lowest_part(expand_at_one(g));
    const LowestPart lfg = lowest_part(expand_at_one(fg));
    const MultiPoly product = lf.part * lg.part;
    if (lfg.degree != lf.degree + lg.degree || !(lfg.part == product) ||
        !in_harmonic_piece(ab, product, lfg.degree)) {
      ++report.lowest_part_violations;
      report.failures.push_back("lowest-part product mismatch: " + where.str());
    }
  }
  return report;
}

}  // namespace qehrhart
