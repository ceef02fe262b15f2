#include "narcert/covers.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

#include "narcert/arith.hpp"
#include "narcert/error.hpp"
#include "narcert/version.hpp"

namespace narcert {

std::vector<GammaWord> gamma_relators(const Signature& sig) {
  const int hyperbolic = 2 * sig.genus();
  GammaWord long_relation;
  for (int i = 0; i < hyperbolic; i += 2) {
    const int a = i + 1;
    const int b = i + 2;
    long_relation.insert(long_relation.end(), {a, b, -a, -b});
  }
  std::vector<GammaWord> out;
  for (std::size_t j = 0; j < sig.period_count(); ++j) {
    long_relation.push_back(hyperbolic + static_cast<int>(j) + 1);
  }
  out.push_back(long_relation);
  for (std::size_t j = 0; j < sig.period_count(); ++j) {
    out.emplace_back(static_cast<std::size_t>(sig.periods()[j]),
                     hyperbolic + static_cast<int>(j) + 1);
  }
  return out;
}

KernelPresentation::KernelPresentation(SkeCertificate base)
    : base_(std::move(base)), quotient_(base_.group) {
  n_ = base_.signature.generator_count();
  const std::uint32_t N = quotient_.size();
  identity_ = quotient_.index_of(base_.group.identity());
  for (const auto& x : base_.images) images_.push_back(quotient_.index_of(x));

  next_.resize(static_cast<std::size_t>(N) * n_);
  prev_.resize(static_cast<std::size_t>(N) * n_);
  for (std::uint32_t c = 0; c < N; ++c) {
    for (std::size_t x = 0; x < n_; ++x) {
      next_[c * n_ + x] = quotient_.mul(c, images_[x]);
      prev_[c * n_ + x] = quotient_.mul(c, quotient_.inv(images_[x]));
    }
  }

  // Breadth-first spanning tree, generators tried in order.
  constexpr auto kUnset = static_cast<std::uint32_t>(-1);
  tree_parent_.assign(N, kUnset);
  tree_generator_.assign(N, 0);
  column_of_.assign(static_cast<std::size_t>(N) * n_, -2);
  std::vector<std::uint32_t> queue{identity_};
  tree_parent_[identity_] = identity_;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::uint32_t c = queue[head];
    for (std::size_t x = 0; x < n_; ++x) {
      const std::uint32_t d = act(c, x);
      if (tree_parent_[d] != kUnset) continue;
      tree_parent_[d] = c;
      tree_generator_[d] = x;
      column_of_[c * n_ + x] = -1;
      queue.push_back(d);
    }
  }
  if (queue.size() != N) {
    throw Error(ErrorKind::kNotSurjective, "generator images do not reach every coset");
  }
  for (std::uint32_t c = 0; c < N; ++c) {
    for (std::size_t x = 0; x < n_; ++x) {
      if (column_of_[c * n_ + x] == -1) continue;
      column_of_[c * n_ + x] = static_cast<std::ptrdiff_t>(columns_.size());
      columns_.emplace_back(c, x);
    }
  }

  IntMatrix integral;
  for (const auto& relator : gamma_relators(base_.signature)) {
    for (std::uint32_t c = 0; c < N; ++c) {
      std::vector<std::int64_t> row(columns_.size(), 0);
      if (rewrite(relator, c, row) != c) {
        throw Error(ErrorKind::kLongRelationFails, "relator does not close up on its coset");
      }
      integral.emplace_back(row.begin(), row.end());
      relations_.push_back(std::move(row));
    }
  }
  homology_ = abelian_invariants(integral, columns_.size());
}

GammaWord KernelPresentation::transversal_word(std::uint32_t c) const {
  GammaWord out;
  while (c != identity_) {
    out.push_back(static_cast<int>(tree_generator_[c]) + 1);
    c = tree_parent_[c];
  }
  std::reverse(out.begin(), out.end());
  return out;
}

GammaWord KernelPresentation::schreier_word(std::size_t column) const {
  const auto [c, x] = columns_.at(column);
  GammaWord out = transversal_word(c);
  out.push_back(static_cast<int>(x) + 1);
  GammaWord back = transversal_word(act(c, x));
  for (auto it = back.rbegin(); it != back.rend(); ++it) out.push_back(-*it);
  return out;
}

std::uint32_t KernelPresentation::rewrite(const GammaWord& word, std::uint32_t start,
                                          std::vector<std::int64_t>& out) const {
  std::uint32_t c = start;
  for (const int letter : word) {
    const auto x = static_cast<std::size_t>(std::abs(letter) - 1);
    if (letter > 0) {
      const auto col = column_of_[c * n_ + x];
      if (col >= 0) out[static_cast<std::size_t>(col)] += 1;
      c = next_[c * n_ + x];
    } else {
      const std::uint32_t d = prev_[c * n_ + x];
      const auto col = column_of_[d * n_ + x];
      if (col >= 0) out[static_cast<std::size_t>(col)] -= 1;
      c = d;
    }
  }
  return c;
}

std::uint32_t KernelPresentation::evaluate(const GammaWord& word) const {
  std::uint32_t c = identity_;
  for (const int letter : word) {
    const auto x = static_cast<std::size_t>(std::abs(letter) - 1);
    c = letter > 0 ? next_[c * n_ + x] : prev_[c * n_ + x];
  }
  return c;
}

HomologyAction::HomologyAction(const KernelPresentation& kp, std::uint32_t p) : p_(p) {
  const auto& h = kp.integral_homology();
  const auto genus = static_cast<std::size_t>(kp.base().kernel_genus);
  if (!h.torsion.empty() || h.free_rank != 2 * genus) {
    throw Error(ErrorKind::kNotSurfaceKernel,
                "kernel homology is " + h.str() + ", expected Z^" + std::to_string(2 * genus));
  }

  const std::size_t M = kp.schreier_count();
  reduced_ = ModpMatrix::from_rows(kp.relation_rows(), M, p);
  pivots_ = reduced_.row_reduce();
  std::vector<bool> is_pivot(M, false);
  for (auto c : pivots_) is_pivot[c] = true;
  for (std::size_t c = 0; c < M; ++c) {
    if (!is_pivot[c]) free_columns_.push_back(c);
  }
  const std::size_t d = free_columns_.size();
  if (d != 2 * genus) {
    throw Error(ErrorKind::kNotSurfaceKernel,
                "mod " + std::to_string(p) + " homology has dimension " + std::to_string(d));
  }

  for (std::size_t x = 0; x < kp.generator_count(); ++x) {
    ModpMatrix a(d, d, p);
    for (std::size_t j = 0; j < d; ++j) {
      GammaWord word{static_cast<int>(x) + 1};
      const GammaWord s = kp.schreier_word(free_columns_[j]);
      word.insert(word.end(), s.begin(), s.end());
      word.push_back(-(static_cast<int>(x) + 1));
      std::vector<std::int64_t> v(M, 0);
      kp.rewrite(word, kp.identity_coset(), v);
      const auto coords = project(std::move(v));
      for (std::size_t i = 0; i < d; ++i) a.set(i, j, coords[i]);
    }
    matrices_.push_back(std::move(a));
  }

  // The matrices must define a representation of Q: walk the Cayley graph
  // and insist that every path to an element gives the same matrix.
  const IndexedGroup& q = kp.quotient();
  std::vector<std::optional<ModpMatrix>> rho(q.size());
  rho[kp.identity_coset()] = ModpMatrix::identity(d, p);
  std::vector<std::uint32_t> queue{kp.identity_coset()};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::uint32_t c = queue[head];
    for (std::size_t x = 0; x < kp.generator_count(); ++x) {
      const std::uint32_t e = kp.act(c, x);
      ModpMatrix m = *rho[c] * matrices_[x];
      if (!rho[e]) {
        rho[e] = std::move(m);
        queue.push_back(e);
      } else if (*rho[e] != m) {
        throw Error(ErrorKind::kVerificationFailed,
                    "homology matrices do not satisfy the relations of the quotient");
      }
    }
  }
  for (auto& m : rho) element_matrices_.push_back(std::move(*m));
}

std::vector<std::uint32_t> HomologyAction::project(std::vector<std::int64_t> v) const {
  const std::int64_t p = p_;
  for (auto& entry : v) entry = ((entry % p) + p) % p;
  for (std::size_t r = 0; r < pivots_.size(); ++r) {
    const std::int64_t coef = v[pivots_[r]];
    if (coef == 0) continue;
    for (std::size_t c = 0; c < v.size(); ++c) {
      v[c] = ((v[c] - coef * reduced_(r, c)) % p + p) % p;
    }
  }
  std::vector<std::uint32_t> out;
  out.reserve(free_columns_.size());
  for (auto c : free_columns_) out.push_back(static_cast<std::uint32_t>(v[c]));
  return out;
}

std::vector<std::uint32_t> HomologyAction::project_column(std::size_t column) const {
  std::vector<std::int64_t> v(reduced_.cols(), 0);
  v.at(column) = 1;
  return project(std::move(v));
}

namespace {

std::vector<std::uint32_t> row_times(const std::vector<std::uint32_t>& f, const ModpMatrix& a) {
  std::vector<std::uint32_t> out(a.cols(), 0);
  const std::uint64_t p = a.prime();
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      out[j] = static_cast<std::uint32_t>((out[j] + std::uint64_t{f[i]} * a(i, j)) % p);
    }
  }
  return out;
}

Hyperplane make_hyperplane(std::vector<std::uint32_t> f, std::uint32_t p) {
  const auto lead = std::find_if(f.begin(), f.end(), [](auto v) { return v != 0; });
  const std::uint64_t inv = inverse_mod(*lead, p);
  for (auto& v : f) v = static_cast<std::uint32_t>(v * inv % p);
  ModpMatrix row(1, f.size(), p);
  for (std::size_t j = 0; j < f.size(); ++j) row.set(0, j, f[j]);
  return Hyperplane{std::move(f), row.nullspace()};
}

void collect_lines(const ModpMatrix& v, std::vector<Hyperplane>& out) {
  const std::size_t k = v.rows();
  const std::uint32_t p = v.prime();
  for (std::size_t lead = 0; lead < k; ++lead) {
    std::vector<std::uint32_t> a(k, 0);
    a[lead] = 1;
    // Odometer over the entries after the leading one.
    while (true) {
      std::vector<std::uint32_t> f(v.cols(), 0);
      for (std::size_t i = 0; i < k; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < v.cols(); ++j) {
          f[j] = static_cast<std::uint32_t>((f[j] + std::uint64_t{a[i]} * v(i, j)) % p);
        }
      }
      out.push_back(make_hyperplane(std::move(f), p));
      std::size_t i = k;
      while (i > lead + 1 && a[i - 1] == p - 1) a[--i] = 0;
      if (i == lead + 1) break;
      ++a[i - 1];
    }
  }
}

void common_eigenspaces(const std::vector<ModpMatrix>& matrices, std::size_t at,
                        const ModpMatrix& space, std::vector<Hyperplane>& out) {
  if (space.rows() == 0) return;
  if (at == matrices.size()) {
    collect_lines(space, out);
    return;
  }
  const ModpMatrix& a = matrices[at];
  const std::uint32_t p = a.prime();
  const std::size_t d = a.rows();
  for (std::uint32_t lambda = 1; lambda < p; ++lambda) {
    ModpMatrix shifted = a;
    for (std::size_t i = 0; i < d; ++i) shifted.set(i, i, std::int64_t{a(i, i)} - lambda);
    // Coefficient vectors c with (c·space)·(A − λ) = 0.
    const ModpMatrix coefficients = (space * shifted).transpose().nullspace();
    if (coefficients.rows() == 0) continue;
    common_eigenspaces(matrices, at + 1, (coefficients * space).row_space(), out);
  }
}

}  // namespace

bool is_invariant(const HomologyAction& h, const std::vector<std::uint32_t>& functional) {
  const std::uint32_t p = h.prime();
  if (functional.size() != h.dimension()) return false;
  const auto lead = std::find_if(functional.begin(), functional.end(),
                                 [p](auto v) { return v % p != 0; });
  if (lead == functional.end()) return false;
  const auto i0 = static_cast<std::size_t>(lead - functional.begin());
  const std::uint64_t inv = inverse_mod(functional[i0] % p, p);
  for (const auto& a : h.generator_matrices()) {
    const auto g = row_times(functional, a);
    const std::uint64_t lambda = g[i0] * inv % p;
    if (lambda == 0) return false;
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (g[j] != lambda * (functional[j] % p) % p) return false;
    }
  }
  return true;
}

std::vector<Hyperplane> invariant_hyperplanes(const HomologyAction& h) {
  std::vector<Hyperplane> out;
  common_eigenspaces(h.generator_matrices(), 0,
                     ModpMatrix::identity(h.dimension(), h.prime()), out);
  std::sort(out.begin(), out.end(),
            [](const Hyperplane& x, const Hyperplane& y) { return x.functional < y.functional; });
  return out;
}

CoverCertificate build_cover(const KernelPresentation& kp, const HomologyAction& h,
                             const Hyperplane& w) {
  const std::uint32_t p = h.prime();
  if (!is_invariant(h, w.functional)) {
    throw Error(ErrorKind::kNotInvariant, "hyperplane is not invariant under the quotient");
  }
  const Hyperplane expected = make_hyperplane(w.functional, p);
  if (expected.functional != w.functional || !(expected.basis == w.basis)) {
    throw Error(ErrorKind::kVerificationFailed,
                "hyperplane basis is not the reduced kernel of its functional");
  }
  const SkeCertificate& base = kp.base();
  const std::int64_t genus = static_cast<std::int64_t>(p) * (base.kernel_genus - 1) + 1;
  const std::uint64_t bound = std::uint64_t{p} * base.group_order;
  if (kernel_genus(base.signature, static_cast<std::int64_t>(bound)) != genus) {
    throw Error(ErrorKind::kVerificationFailed, "cover genus disagrees with Riemann-Hurwitz");
  }
  return CoverCertificate{base, p, expected, genus, bound};
}

QuotientGroup cover_quotient_group(const KernelPresentation& kp,
                                   std::span<const CoverLayer> layers) {
  const std::uint32_t N = kp.coset_count();
  std::uint64_t degree = N;
  for (const auto& layer : layers) {
    if (!is_invariant(*layer.action, layer.functional)) {
      throw Error(ErrorKind::kNotInvariant, "layer functional is not invariant");
    }
    degree *= layer.action->prime();
  }
  if (degree > GroupOptions{}.degree_cap) {
    throw Error(ErrorKind::kOrderCapExceeded, "quotient permutation degree too large");
  }

  // f(s_{c,x}) for every Schreier column and layer.
  std::vector<std::vector<std::uint32_t>> shift(layers.size(),
                                                std::vector<std::uint32_t>(kp.schreier_count()));
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto& h = *layers[l].action;
    const std::uint64_t p = h.prime();
    for (std::size_t col = 0; col < kp.schreier_count(); ++col) {
      const auto coords = h.project_column(col);
      std::uint64_t value = 0;
      for (std::size_t i = 0; i < coords.size(); ++i) {
        value = (value + std::uint64_t{coords[i]} * layers[l].functional[i]) % p;
      }
      shift[l][col] = static_cast<std::uint32_t>(value);
    }
  }

  const auto deg = static_cast<std::uint32_t>(degree);
  std::vector<Permutation> gens;
  for (std::size_t x = 0; x < kp.generator_count(); ++x) {
    Permutation perm(deg);
    for (std::uint32_t point = 0; point < deg; ++point) {
      const std::uint32_t c = point % N;
      std::uint32_t rest = point / N;
      const auto col = kp.column(c, x);
      std::uint32_t image = 0;
      std::uint32_t radix = 1;
      for (std::size_t l = 0; l < layers.size(); ++l) {
        const std::uint32_t p = layers[l].action->prime();
        std::uint32_t z = rest % p;
        rest /= p;
        if (col >= 0) z = (z + shift[l][static_cast<std::size_t>(col)]) % p;
        image += radix * z;
        radix *= p;
      }
      perm[point] = kp.act(c, x) + N * image;
    }
    gens.push_back(std::move(perm));
  }
  std::string name = "quotient:" + kp.base().group.descriptor();
  for (const auto& layer : layers) name += "/" + std::to_string(layer.action->prime());
  FiniteGroup group = FiniteGroup::from_permutations(name, deg, gens);
  std::vector<Element> images;
  for (auto& g : gens) images.emplace_back(std::move(g));
  return QuotientGroup{std::move(group), std::move(images)};
}

bool KazazCase::predicts(std::uint32_t p) const {
  switch (letter) {
    case 'a': return p % 8 == 1 || p == 2;
    case 'b':
    case 'c': return p == 2;
    case 'd':
    case 'e': return p % 5 == 1 || p == 5;
    case 'f':
    case 'g': return p % 6 == 1 || p == 3;
    default: return false;
  }
}

const std::vector<KazazCase>& kazaz_cases() {
  static const std::vector<KazazCase> cases = {
      {'a', Signature::of_periods({2, 8, 8}), "cyclic:8", "p = 1 mod 8 or p = 2"},
      {'b', Signature::of_periods({4, 4, 4}), "quaternion8", "p = 2"},
      {'c', Signature::of_periods({2, 4, 8}), "semidihedral16", "p = 2"},
      {'d', Signature::of_periods({5, 5, 5}), "cyclic:5", "p = 1 mod 5 or p = 5"},
      {'e', Signature::of_periods({2, 5, 10}), "cyclic:10", "p = 1 mod 5 or p = 5"},
      {'f', Signature::of_periods({3, 6, 6}), "cyclic:6", "p = 1 mod 6 or p = 3"},
      {'g', Signature::of_periods({2, 6, 6}), "product:cyclic:6,cyclic:2", "p = 1 mod 6 or p = 3"},
  };
  return cases;
}

const KazazCase& kazaz_case(char letter) {
  for (const auto& c : kazaz_cases()) {
    if (c.letter == letter) return c;
  }
  throw Error(ErrorKind::kInvalidArgument, std::string("unknown case '") + letter + "'");
}

SkeCertificate kazaz_base(const KazazCase& c) {
  const auto result = search_ske(c.signature, construct(c.group));
  if (result.certificates.empty()) {
    throw Error(ErrorKind::kWitnessSearchFailed,
                "no SKE from " + c.signature.str() + " onto " + c.group);
  }
  return result.certificates.front();
}

bool KazazReport::agrees() const {
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.agrees(); });
}

KazazReport kazaz_case_check(char letter, std::span<const std::uint32_t> primes,
                             unsigned threads) {
  const KazazCase& c = kazaz_case(letter);
  for (const auto p : primes) {
    if (!is_prime(p)) throw Error(ErrorKind::kInvalidArgument, std::to_string(p) + " is not prime");
  }
  const KernelPresentation kp(kazaz_base(c));
  KazazReport report;
  report.letter = letter;
  report.results.resize(primes.size());

  auto run = [&](std::size_t i) {
    const HomologyAction h(kp, primes[i]);
    auto& r = report.results[i];
    r.prime = primes[i];
    r.dimension = h.dimension();
    r.hyperplanes = invariant_hyperplanes(h).size();
    r.predicted = c.predicts(primes[i]);
  };
  const unsigned workers = std::min<std::size_t>(std::max(1U, threads), primes.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < primes.size(); ++i) run(i);
    return report;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex mutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < primes.size(); i = next++) {
        try {
          run(i);
        } catch (...) {
          std::lock_guard lock(mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return report;
}

SkeCertificate klein_four_base() {
  const FiniteGroup v4 = klein_four();
  const Element& x = v4.generators()[0];
  const Element& y = v4.generators()[1];
  return verify_ske(Signature::of_periods({2, 2, 2, 2, 2}), v4,
                    {v4.multiply(x, y), y, y, y, x});
}

nlohmann::json to_json(const CoverCertificate& cert) {
  return {
      {"schema_version", kSchemaVersion},
      {"kind", "cover"},
      {"base", to_json(cert.base)},
      {"prime", cert.prime},
      {"functional", cert.hyperplane.functional},
      {"hyperplane", cert.hyperplane.basis.to_rows()},
      {"genus", cert.genus},
      {"bound", cert.bound},
      {"verifier_version", kVersion},
  };
}

CoverCertificate cover_from_json(const nlohmann::json& doc, const GroupOptions& options) {
  std::uint32_t p = 0;
  std::vector<std::uint32_t> functional;
  std::vector<std::vector<std::int64_t>> rows;
  std::int64_t genus = 0;
  std::uint64_t bound = 0;
  try {
    if (doc.at("schema_version").get<int>() != kSchemaVersion ||
        doc.at("kind").get<std::string>() != "cover") {
      throw Error(ErrorKind::kParse, "not a cover certificate of this schema");
    }
    p = doc.at("prime").get<std::uint32_t>();
    functional = doc.at("functional").get<std::vector<std::uint32_t>>();
    rows = doc.at("hyperplane").get<std::vector<std::vector<std::int64_t>>>();
    genus = doc.at("genus").get<std::int64_t>();
    bound = doc.at("bound").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("malformed cover certificate: ") + e.what());
  }
  const SkeCertificate base = ske_from_json(doc.at("base"), options);
  const KernelPresentation kp(base);
  const HomologyAction h(kp, p);
  for (const auto& row : rows) {
    if (row.size() != h.dimension()) {
      throw Error(ErrorKind::kVerificationFailed, "hyperplane rows have the wrong width");
    }
  }
  const Hyperplane w{functional, ModpMatrix::from_rows(rows, h.dimension(), p)};
  CoverCertificate cert = build_cover(kp, h, w);
  if (cert.genus != genus || cert.bound != bound) {
    throw Error(ErrorKind::kVerificationFailed, "recorded genus or bound disagrees");
  }
  return cert;
}

}  // namespace narcert
