#include "ucg/oracle.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "ucg/geometry.hpp"
#include "ucg/metric.hpp"

namespace ucg {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::TooLarge, what);
}

std::string str(const ArfValue& a) {
  std::ostringstream os;
  os << a;
  return os.str();
}

// GF(2)-rank of a set of field elements viewed as bit vectors.
unsigned bit_rank(std::vector<std::uint32_t> rows) {
  unsigned r = 0;
  for (unsigned bit = 32; bit-- > 0;) {
    auto piv = std::find_if(rows.begin() + r, rows.end(), [&](std::uint32_t v) { return (v >> bit) & 1u; });
    if (piv == rows.end()) continue;
    std::swap(rows[r], *piv);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != r && ((rows[i] >> bit) & 1u)) rows[i] ^= rows[r];
    ++r;
  }
  return r;
}

std::set<std::uint32_t> harf_image(const Field& f) {
  std::set<std::uint32_t> h;
  for (std::uint32_t x = 0; x < f.order(); ++x) h.insert(x ^ f.mul(x, x));
  return h;
}

// Zero count of a non-degenerate form of dimension 2m: q^(2m-1) + q^m - q^(m-1) for
// class 0, q^(2m-1) - q^m + q^(m-1) for class e.
std::optional<ArfClass> class_from_zero_count(const QuadraticForm& form) {
  const Field& f = form.field();
  const std::uint64_t q = f.order();
  const auto dim = static_cast<unsigned>(form.dim());
  std::uint64_t total = 1;
  for (unsigned i = 0; i < dim; ++i) total *= q;
  std::uint64_t zeros = 0;
  for (std::uint64_t i = 0; i < total; ++i)
    if (q_eval(form, vector_from_index(f, form.dim(), i)).is_zero()) ++zeros;
  std::uint64_t base = 1, qm = 1;
  for (unsigned i = 0; i + 1 < dim; ++i) base *= q;
  for (unsigned i = 0; i < dim / 2; ++i) qm *= q;
  const std::uint64_t delta = qm - qm / q;
  if (zeros == base + delta) return ArfClass::Zero;
  if (zeros == base - delta) return ArfClass::E;
  return std::nullopt;
}

// All 2x2 matrices preserving Q on a basis and B between the basis vectors.
std::vector<Matrix> brute_plane_isometries(const QuadraticForm& plane) {
  const Field& f = plane.field();
  const Vector e1 = make_vector(f, {1, 0});
  const Vector e2 = make_vector(f, {0, 1});
  const Element q1 = q_eval(plane, e1), q2 = q_eval(plane, e2), b12 = b_eval(plane, e1, e2);
  std::vector<Vector> first, second;
  for (std::uint64_t i = 0; i < std::uint64_t(f.order()) * f.order(); ++i) {
    const Vector v = vector_from_index(f, 2, i);
    const Element qv = q_eval(plane, v);
    if (qv == q1) first.push_back(v);
    if (qv == q2) second.push_back(v);
  }
  std::vector<Matrix> out;
  for (const Vector& a : first)
    for (const Vector& b : second)
      if (b_eval(plane, a, b) == b12) {
        Matrix m(2, 2);
        m << a(0), b(0), a(1), b(1);
        out.push_back(m);
      }
  return out;
}

QuadraticForm class_e_plane(const Field& f) {
  return QuadraticForm(f, make_matrix(f, {{1, 1}, {0, f.e().value()}}));
}

constexpr std::uint64_t kExhaustiveBudget = 1u << 21;
constexpr int kSampledForms = 8;

QuadraticForm hyperbolic(const Field& f) { return QuadraticForm(f, make_matrix(f, {{0, 1}, {0, 0}})); }

}  // namespace

VerificationReport verify_lindex(const FieldSpec& spec) {
  require(spec.n <= 8, "lindex verification needs n <= 8");
  const Field& f = Field::make(spec);
  VerificationReport rep{"lindex", spec.n, 0, {}, {}};
  const std::set<std::uint32_t> h = harf_image(f);

  // Roots of p(x) = x + x^2 + x^4 + ... + x^(2^(n-1)), by repeated multiplication.
  std::set<std::uint32_t> roots;
  for (std::uint32_t x = 0; x < f.order(); ++x) {
    std::uint32_t term = x, sum = 0;
    for (unsigned i = 0; i < f.degree(); ++i) {
      sum ^= term;
      term = f.mul(term, term);
    }
    if (sum == 0) roots.insert(x);
  }
  ++rep.cases_checked;
  if (roots != h) rep.failures.push_back("H(K) differs from the roots of p(x)");

  for (std::uint32_t lambda = 0; lambda < f.order(); ++lambda) {
    ++rep.cases_checked;
    std::set<std::uint32_t> scaled;
    for (std::uint32_t x : h) scaled.insert(f.mul(lambda, x));
    const bool subset = std::includes(h.begin(), h.end(), scaled.begin(), scaled.end());
    const bool trivial = lambda <= 1;
    if (subset != trivial) {
      rep.failures.push_back("lambda=" + std::to_string(lambda) + ": subset=" + std::to_string(subset) +
                             " but lambda in {0,1} is " + std::to_string(trivial));
      continue;
    }
    if (trivial) continue;
    std::size_t common = 0;
    for (std::uint32_t x : scaled) common += h.count(x);
    if (common * 4 != f.order())
      rep.failures.push_back("lambda=" + std::to_string(lambda) + ": |lambda H cap H| = " + std::to_string(common) +
                             ", expected " + std::to_string(f.order() / 4));
    std::vector<std::uint32_t> gens(h.begin(), h.end());
    gens.insert(gens.end(), scaled.begin(), scaled.end());
    if (bit_rank(gens) != f.degree())
      rep.failures.push_back("lambda=" + std::to_string(lambda) + ": lambda H + H does not span K");
  }
  return rep;
}

VerificationReport verify_arf_wellposed(const FieldSpec& spec, int dim, std::uint64_t seed) {
  require(dim >= 2 && dim % 2 == 0, "Arf verification needs an even dimension >= 2");
  require(spec.n * static_cast<unsigned>(dim) <= 8, "Arf verification needs n * dim <= 8");
  const Field& f = Field::make(spec);
  VerificationReport rep{"arf-wellposed-dim" + std::to_string(dim), spec.n, 0, {}, {}};
  const auto d = static_cast<Eigen::Index>(dim);

  auto check = [&](const QuadraticForm& form, const std::vector<Matrix>& changes) {
    const ArfValue base = arf_invariant(form);
    const ArfClass cls = arf_normalize(base);
    const auto counted = class_from_zero_count(form);
    ++rep.cases_checked;
    if (!counted || *counted != cls)
      rep.failures.push_back("form class " + std::string(to_string(cls)) + " disagrees with its zero count");
    if (!(arf_invariant(form.pullback(identity_matrix(f, d))) == base))
      rep.failures.push_back("identity basis change altered the raw Arf value");
    for (const Matrix& m : changes) {
      ++rep.cases_checked;
      const ArfValue moved = arf_invariant(form.pullback(m));
      if (arf_normalize(moved) != cls)
        rep.failures.push_back("basis change moved Arf " + str(base) + " to " + str(moved));
    }
    ++rep.observations[cls == ArfClass::Zero ? "forms of class 0" : "forms of class e"];
  };

  if (dim == 2) {
    const std::vector<Matrix> gl = general_linear_group(f, 2);
    rep.observations["basis changes per form"] = gl.size();
    const std::uint64_t q = f.order();
    std::vector<std::uint64_t> picks;
    if (q * q * (q - 1) * gl.size() <= kExhaustiveBudget) {
      for (std::uint64_t i = 0; i < q * q * (q - 1); ++i) picks.push_back(i);
    } else {
      std::mt19937_64 rng(seed);
      std::uniform_int_distribution<std::uint64_t> pick(0, q * q * (q - 1) - 1);
      for (int k = 0; k < kSampledForms; ++k) picks.push_back(pick(rng));
      rep.observations["sampled forms"] = picks.size();
    }
    for (std::uint64_t i : picks) {
      const auto a = std::uint32_t(i % q), b = std::uint32_t(i / q % (q - 1) + 1), c = std::uint32_t(i / q / (q - 1));
      check(QuadraticForm(f, make_matrix(f, {{a, b}, {0, c}})), gl);
    }
    return rep;
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> coin(0, f.order() - 1);
  auto random_matrix = [&](bool upper) {
    Matrix m = zero_matrix(f, d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = upper ? i : 0; j < d; ++j) m(i, j) = f.element(coin(rng));
    return m;
  };
  constexpr int kForms = 20, kChanges = 50;
  for (int k = 0; k < kForms;) {
    const QuadraticForm form(f, random_matrix(true));
    if (rank(form.gram()) != d) continue;
    std::vector<Matrix> changes;
    while (static_cast<int>(changes.size()) < kChanges) {
      Matrix m = random_matrix(false);
      if (rank(m) == d) changes.push_back(std::move(m));
    }
    check(form, changes);
    ++k;
  }
  return rep;
}

VerificationReport verify_ort_orbits(const FieldSpec& spec) {
  require(spec.n <= 4, "orbit verification needs n <= 4");
  const Field& f = Field::make(spec);
  VerificationReport rep{"ort-orbits", spec.n, 0, {}, {}};
  const QuadraticForm plane = class_e_plane(f);
  const std::vector<Matrix> group = brute_plane_isometries(plane);
  const std::uint64_t q = f.order();

  ++rep.cases_checked;
  if (group.size() != 2 * (q + 1))
    rep.failures.push_back("|Ort(e)| = " + std::to_string(group.size()) + ", expected " + std::to_string(2 * (q + 1)));
  if (enumerate_isometries(plane).order() != group.size())
    rep.failures.push_back("backtracking enumeration disagrees with brute force on |Ort(e)|");

  std::vector<bool> seen(q * q, false);
  for (std::uint64_t i = 1; i < q * q; ++i) {
    if (seen[i]) continue;
    std::set<std::uint64_t> orbit;
    const Vector v = vector_from_index(f, 2, i);
    for (const Matrix& m : group) orbit.insert(vector_index(f, Vector(m * v)));
    for (std::uint64_t j : orbit) seen[j] = true;
    ++rep.cases_checked;
    ++rep.observations["orbits"];
    if (orbit.size() != q + 1)
      rep.failures.push_back("orbit of vector " + std::to_string(i) + " has size " + std::to_string(orbit.size()));
  }
  return rep;
}

VerificationReport verify_lambda_constraint(const FieldSpec& spec) {
  require(spec.n <= 4, "lambda verification needs n <= 4");
  const Field& f = Field::make(spec);
  VerificationReport rep{"lambda-constraint", spec.n, 0, {}, {}};

  for (const auto& [name, plane] : {std::pair{std::string("class 0"), hyperbolic(f)},
                                    std::pair{std::string("class e"), class_e_plane(f)}}) {
    const Matrix& a = plane.coeffs();
    const Matrix b = plane.gram();
    std::size_t index_zero = 0;
    const std::vector<Matrix> group = brute_plane_isometries(plane);
    for (const Matrix& m : group) {
      ++rep.cases_checked;
      const Matrix lhs = m.transpose() * a * m + a;
      std::vector<std::uint32_t> found;
      for (std::uint32_t lam = 0; lam < f.order(); ++lam) {
        const Element l = f.element(lam);
        bool match = true;
        for (Eigen::Index i = 0; i < 2; ++i)
          for (Eigen::Index j = 0; j < 2; ++j) match = match && lhs(i, j) == l * b(i, j);
        if (match) found.push_back(lam);
      }
      if (found.size() != 1) {
        rep.failures.push_back(name + ": " + std::to_string(found.size()) + " scalars solve M^T A M = A + lambda B");
        continue;
      }
      const Element lam = f.element(found.front());
      if (found.front() > 1) rep.failures.push_back(name + ": lambda_M = " + std::to_string(found.front()));
      if (lambda_of(plane, m) != lam) rep.failures.push_back(name + ": lambda_of disagrees with search");
      ++rep.observations[name + ": lambda=" + std::to_string(found.front())];
      const Element rel = lam + lam * lam;
      ++rep.observations[rel.is_zero() ? "lambda+lambda^2=0 holds" : "lambda+lambda^2=1 holds"];
      if (lam.is_zero()) ++index_zero;
    }
    if (2 * index_zero != group.size())
      rep.failures.push_back(name + ": {lambda_M = 0} has " + std::to_string(index_zero) + " of " +
                             std::to_string(group.size()) + " elements, not index 2");
  }
  return rep;
}

VerificationReport verify_transformation(const FieldSpec& spec) {
  require(spec.n <= 3, "transformation verification needs n <= 3");
  const Field& f = Field::make(spec);
  VerificationReport rep{"transformation", spec.n, 0, {}, {}};

  std::vector<ArfValue> values{ArfValue::infinity()};
  for (const Element& x : f.elements()) values.push_back(ArfValue::finite(x));
  auto degenerate = [](const ArfValue& a) { return a.infinite || a.value.is_zero(); };

  for (const ArfValue& ap : values)
    for (const ArfValue& al : values) {
      const Geometry g = build_geometry(f, ap, al);
      const Vector& om = g.omega().rep();
      const Vector& p = g.p().rep();
      const Vector& l = g.l().rep();
      auto raw_arf = [&](const Vector& omega, const Vector& x) {
        const Element bx = b_eval(g.form(), omega, x);
        if (bx.is_zero()) return ArfValue::infinity();
        return ArfValue::finite(q_eval(g.form(), x) * q_eval(g.form(), omega) / (bx * bx));
      };
      const ArfValue old_p = raw_arf(om, p), old_l = raw_arf(om, l);
      const bool generic = !degenerate(old_p) && !degenerate(old_l);

      for (const Element& alpha : f.elements())
        for (const Element& beta : f.elements()) {
          const Vector om2 = om + alpha * p + beta * l;
          if (q_eval(g.form(), om2).is_zero()) {
            ++rep.observations["skipped: new Q(Omega) = 0"];
            continue;
          }
          ++rep.cases_checked;
          const ArfValue new_p = raw_arf(om2, p), new_l = raw_arf(om2, l);
          const OmegaReplacement r = replace_omega(g, alpha, beta);
          if (!(r.predicted_arf_l == new_l) || !(r.predicted_arf_p == new_p)) {
            std::ostringstream os;
            os << "Arf(P)=" << old_p << " Arf(L)=" << old_l << " alpha=" << alpha << " beta=" << beta
               << ": predicted (" << r.predicted_arf_p << ", " << r.predicted_arf_l << "), recomputed (" << new_p
               << ", " << new_l << ")";
            rep.failures.push_back(os.str());
          }

          if (!generic) {
            const bool both = old_p == new_p && old_l == new_l;
            ++rep.observations[both ? "degenerate case: both values unchanged"
                                    : "degenerate case: a finite partner changed"];
            const bool kept = (!degenerate(old_p) || old_p == new_p) && (!degenerate(old_l) || old_l == new_l);
            ++rep.observations[kept ? "degenerate case: the 0/inf value unchanged"
                                    : "degenerate case: the 0/inf value changed"];
            if (!kept) rep.failures.push_back("a 0/inf Arf value changed under Omega replacement");
            continue;
          }
          if (degenerate(new_p) || degenerate(new_l)) {
            ++rep.observations["generic case: became degenerate"];
            continue;
          }
          const Element rho = old_l.value / old_p.value;
          const Element rho2 = new_l.value / new_p.value;
          ++rep.observations[rho == rho2 ? "rho preserved" : "rho changed"];
          if (rho.is_one()) {
            const bool same = ftrace(old_l.value) == ftrace(new_l.value);
            ++rep.observations[same ? "rho=1: Arf(L) class preserved" : "rho=1: Arf(L) class changed"];
          }
        }
    }
  return rep;
}

std::vector<VerificationReport> run_suite(const std::string& suite, unsigned n_min, unsigned n_max,
                                          std::uint64_t seed) {
  static const std::vector<std::string> kSuites = {"lindex", "arf", "ort-orbits", "lambda", "transformation"};
  if (suite != "all" && std::find(kSuites.begin(), kSuites.end(), suite) == kSuites.end())
    throw Error(ErrorCode::InvalidInput, "unknown suite '" + suite + "'");
  if (n_min < 1 || n_min > n_max || n_max > kMaxDegree)
    throw Error(ErrorCode::InvalidInput, "bad degree range");

  const bool all = suite == "all";
  std::vector<VerificationReport> out;
  for (unsigned n = n_min; n <= n_max; ++n) {
    const FieldSpec spec = Field::make(n).spec();
    auto want = [&](const std::string& name, unsigned limit) {
      if (!all && suite != name) return false;
      if (n <= limit) return true;
      if (all) return false;
      throw Error(ErrorCode::TooLarge, "suite " + name + " supports n <= " + std::to_string(limit));
    };
    if (want("lindex", 8)) out.push_back(verify_lindex(spec));
    if (want("arf", 4)) {
      out.push_back(verify_arf_wellposed(spec, 2, seed));
      if (n <= 2) out.push_back(verify_arf_wellposed(spec, 4, seed));
    }
    if (want("ort-orbits", 4)) out.push_back(verify_ort_orbits(spec));
    if (want("lambda", 4)) out.push_back(verify_lambda_constraint(spec));
    if (want("transformation", 3)) out.push_back(verify_transformation(spec));
  }
  return out;
}

}  // namespace ucg
