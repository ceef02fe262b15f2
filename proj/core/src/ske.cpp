#include "narcert/ske.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "narcert/error.hpp"
#include "narcert/version.hpp"

namespace narcert {

SkeCertificate verify_ske(const Signature& sig, const FiniteGroup& group,
                          std::vector<Element> images) {
  const std::size_t n = sig.generator_count();
  if (images.size() != n) {
    throw Error(ErrorKind::kInvalidArgument,
                sig.str() + " has " + std::to_string(n) + " generators but " +
                    std::to_string(images.size()) + " images were given");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!group.contains(images[i])) {
      throw Error(ErrorKind::kInvalidArgument, "image " + std::to_string(i + 1) +
                                                   " is not an element of " + group.descriptor());
    }
  }

  const std::size_t hyperbolic = 2 * static_cast<std::size_t>(sig.genus());
  Element product = group.identity();
  for (std::size_t i = 0; i < hyperbolic; i += 2) {
    const Element& x = images[i];
    const Element& y = images[i + 1];
    const Element commutator = group.multiply(group.multiply(x, y),
                                              group.multiply(group.inverse(x), group.inverse(y)));
    product = group.multiply(product, commutator);
  }
  for (std::size_t i = hyperbolic; i < n; ++i) product = group.multiply(product, images[i]);
  if (product != group.identity()) {
    throw Error(ErrorKind::kLongRelationFails,
                "long relation maps to " + format_element(product) + ", not the identity");
  }

  for (std::size_t j = 0; j < sig.period_count(); ++j) {
    const auto m = static_cast<std::uint64_t>(sig.periods()[j]);
    const std::uint64_t order = element_order(group, images[hyperbolic + j]);
    if (order != m) {
      const std::string what = m % order == 0 ? "kernel has torsion" : "not a homomorphism";
      throw Error(ErrorKind::kOrderNotPreserved,
                  "image of γ_" + std::to_string(j + 1) + " has order " + std::to_string(order) +
                      " instead of " + std::to_string(m) + " (" + what + ")",
                  static_cast<std::int64_t>(j + 1));
    }
  }

  if (!generates(group, images)) {
    throw Error(ErrorKind::kNotSurjective, "images do not generate " + group.descriptor());
  }
  if (group.order() > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
    throw Error(ErrorKind::kInvalidArgument, "group order out of range");
  }
  const std::int64_t genus = kernel_genus(sig, static_cast<std::int64_t>(group.order()));
  return SkeCertificate{sig, group, std::move(images), genus, group.order()};
}

namespace {

struct Context {
  Context(const IndexedGroup& g, const SearchOptions& o) : group(g), options(o) {}

  const IndexedGroup& group;
  const SearchOptions& options;
  std::size_t hyperbolic = 0;
  std::size_t generators = 0;
  std::vector<std::size_t> levels;                   // positions, in search order
  std::vector<std::vector<std::uint32_t>> candidates;  // per level
  std::ptrdiff_t solved = -1;
  std::uint32_t solved_order = 0;
  std::uint32_t identity = 0;
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> stop{false};
  std::atomic<std::size_t> best_branch{std::numeric_limits<std::size_t>::max()};
};

class Walker {
 public:
  explicit Walker(Context& ctx) : ctx_(ctx), assign_(ctx.generators, ctx.identity) {}

  std::function<bool(std::span<const std::uint32_t>)> sink;
  std::uint64_t count = 0;

  void run_from(std::size_t level, std::size_t branch) {
    branch_ = branch;
    halted_ = false;
    descend(level);
  }

  void fix(std::size_t level, std::uint32_t value) {
    tick();
    assign_[ctx_.levels[level]] = value;
  }

  void flush() {
    const std::uint64_t total = ctx_.nodes.fetch_add(pending_) + pending_;
    pending_ = 0;
    if (total > ctx_.options.node_budget) {
      throw Error(ErrorKind::kSearchSpaceTooLarge,
                  "node budget of " + std::to_string(ctx_.options.node_budget) + " exhausted");
    }
  }

 private:
  void tick() {
    if (++pending_ == 1024) flush();
  }

  bool should_halt() const {
    if (ctx_.stop.load(std::memory_order_relaxed)) return true;
    return ctx_.options.mode == SearchMode::kFirst &&
           branch_ > ctx_.best_branch.load(std::memory_order_relaxed);
  }

  void descend(std::size_t level) {
    if (halted_ || should_halt()) {
      halted_ = true;
      return;
    }
    if (level == ctx_.levels.size()) {
      leaf();
      return;
    }
    const std::size_t pos = ctx_.levels[level];
    for (const std::uint32_t c : ctx_.candidates[level]) {
      tick();
      assign_[pos] = c;
      descend(level + 1);
      if (halted_) return;
    }
  }

  void leaf() {
    const IndexedGroup& g = ctx_.group;
    std::uint32_t prod = ctx_.identity;
    for (std::size_t i = 0; i < ctx_.hyperbolic; i += 2) {
      const std::uint32_t x = assign_[i];
      const std::uint32_t y = assign_[i + 1];
      prod = g.mul(prod, g.mul(g.mul(x, y), g.mul(g.inv(x), g.inv(y))));
    }
    std::uint32_t before = 0;
    for (std::size_t pos = ctx_.hyperbolic; pos < ctx_.generators; ++pos) {
      if (static_cast<std::ptrdiff_t>(pos) == ctx_.solved) {
        before = prod;
        prod = ctx_.identity;
      } else {
        prod = g.mul(prod, assign_[pos]);
      }
    }
    if (ctx_.solved < 0) {
      if (prod != ctx_.identity) return;
    } else {
      const std::uint32_t gamma = g.mul(g.inv(before), g.inv(prod));
      if (g.order_of(gamma) != ctx_.solved_order) return;
      assign_[static_cast<std::size_t>(ctx_.solved)] = gamma;
    }
    if (!g.generates(assign_)) return;
    if (ctx_.options.dedup && !conjugation_minimal()) return;

    ++count;
    if (ctx_.options.mode != SearchMode::kCount && sink && !sink(assign_)) halted_ = true;
    if (ctx_.options.mode == SearchMode::kFirst) halted_ = true;
  }

  bool conjugation_minimal() const {
    const IndexedGroup& g = ctx_.group;
    for (std::uint32_t h = 0; h < g.size(); ++h) {
      const std::uint32_t hi = g.inv(h);
      for (std::size_t i = 0; i < assign_.size(); ++i) {
        const std::uint32_t c = g.mul(g.mul(hi, assign_[i]), h);
        if (c < assign_[i]) return false;
        if (c > assign_[i]) break;
      }
    }
    return true;
  }

  Context& ctx_;
  std::vector<std::uint32_t> assign_;
  std::uint64_t pending_ = 0;
  std::size_t branch_ = 0;
  bool halted_ = false;
};

void plan_search(const Signature& sig, Context& ctx) {
  const IndexedGroup& g = ctx.group;
  ctx.hyperbolic = 2 * static_cast<std::size_t>(sig.genus());
  ctx.generators = sig.generator_count();
  ctx.identity = g.index_of(g.group().identity());

  std::vector<std::uint32_t> everything(g.size());
  for (std::uint32_t i = 0; i < g.size(); ++i) everything[i] = i;

  std::vector<std::pair<std::size_t, std::size_t>> elliptic;  // (class size, position)
  std::vector<std::vector<std::uint32_t>> by_position(ctx.generators);
  for (std::size_t j = 0; j < sig.period_count(); ++j) {
    const auto m = static_cast<std::uint32_t>(sig.periods()[j]);
    const std::size_t pos = ctx.hyperbolic + j;
    for (std::uint32_t i = 0; i < g.size(); ++i) {
      if (g.order_of(i) == m) by_position[pos].push_back(i);
    }
    elliptic.emplace_back(by_position[pos].size(), pos);
  }
  std::sort(elliptic.begin(), elliptic.end());
  if (!elliptic.empty()) {
    const std::size_t last = elliptic.back().second;
    ctx.solved = static_cast<std::ptrdiff_t>(last);
    ctx.solved_order = static_cast<std::uint32_t>(sig.periods()[last - ctx.hyperbolic]);
    elliptic.pop_back();
  }
  for (const auto& [size, pos] : elliptic) {
    ctx.levels.push_back(pos);
    ctx.candidates.push_back(by_position[pos]);
  }
  for (std::size_t pos = 0; pos < ctx.hyperbolic; ++pos) {
    ctx.levels.push_back(pos);
    ctx.candidates.push_back(everything);
  }
}

SearchStats run_parallel(Context& ctx, unsigned threads, const SkeVisitor& visit) {
  const auto& first = ctx.candidates.front();
  const std::size_t branch_count = first.size();
  const bool first_mode = ctx.options.mode == SearchMode::kFirst;
  const std::size_t width = ctx.generators;

  struct Branch {
    std::vector<std::uint32_t> flat;
    std::uint64_t count = 0;
    bool done = false;
  };
  std::vector<Branch> branches(branch_count);
  std::mutex mutex;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;

  auto fail = [&] {
    std::lock_guard lock(mutex);
    if (!error) error = std::current_exception();
    ctx.stop = true;
  };

  auto work = [&] {
    Walker walker(ctx);
    while (true) {
      const std::size_t b = next.fetch_add(1);
      if (b >= branch_count) break;
      Branch& branch = branches[b];
      const bool skip = ctx.stop.load() || (first_mode && b > ctx.best_branch.load());
      if (!skip) {
        try {
          walker.count = 0;
          walker.sink = [&branch](std::span<const std::uint32_t> images) {
            branch.flat.insert(branch.flat.end(), images.begin(), images.end());
            return true;
          };
          walker.fix(0, first[b]);
          walker.run_from(1, b);
          branch.count = walker.count;
          if (first_mode && walker.count > 0) {
            std::size_t current = ctx.best_branch.load();
            while (b < current && !ctx.best_branch.compare_exchange_weak(current, b)) {
            }
          }
        } catch (...) {
          fail();
        }
      }
      {
        std::lock_guard lock(mutex);
        branch.done = true;
      }
      ready.notify_all();
    }
    try {
      walker.flush();
    } catch (...) {
      fail();
    }
  };

  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);

  SearchStats stats;
  bool delivering = true;
  for (std::size_t b = 0; b < branch_count && delivering; ++b) {
    {
      std::unique_lock lock(mutex);
      ready.wait(lock, [&] { return branches[b].done; });
      if (error) break;
    }
    Branch& branch = branches[b];
    stats.count += branch.count;
    if (ctx.options.mode != SearchMode::kCount) {
      for (std::size_t at = 0; at < branch.flat.size(); at += width) {
        if (!visit(std::span<const std::uint32_t>(branch.flat.data() + at, width))) {
          delivering = false;
          break;
        }
      }
    }
    std::vector<std::uint32_t>().swap(branch.flat);
    if (first_mode && branch.count > 0) delivering = false;
  }
  ctx.stop = true;
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  stats.nodes = ctx.nodes.load();
  return stats;
}

}  // namespace

SearchStats visit_skes(const Signature& sig, const IndexedGroup& group,
                       const SearchOptions& options, const SkeVisitor& visit) {
  if (!sig.admissible()) {
    throw Error(ErrorKind::kNonAdmissible, sig.str() + " is not a cocompact signature");
  }
  Context ctx(group, options);
  plan_search(sig, ctx);

  const unsigned threads = std::max(1U, options.threads);
  if (threads > 1 && !ctx.levels.empty() && ctx.candidates.front().size() > 1) {
    return run_parallel(ctx, threads, visit);
  }
  Walker walker(ctx);
  walker.sink = visit;
  walker.run_from(0, 0);
  walker.flush();
  return SearchStats{walker.count, ctx.nodes.load()};
}

SearchResult search_ske(const Signature& sig, const FiniteGroup& group,
                        const SearchOptions& options) {
  const IndexedGroup indexed(group);
  SearchResult result;
  const SearchStats stats = visit_skes(sig, indexed, options, [&](auto images) {
    std::vector<Element> elements;
    elements.reserve(images.size());
    for (const auto i : images) elements.push_back(indexed.element(i));
    result.certificates.push_back(verify_ske(sig, group, std::move(elements)));
    return true;
  });
  result.count = stats.count;
  result.nodes = stats.nodes;
  return result;
}

SkeCertificate lemma32_ske(std::int64_t g) {
  if (g < 2) throw Error(ErrorKind::kInvalidArgument, "genus must be at least 2");
  const std::int64_t n = 2 * (g - 1);
  const FiniteGroup group = FiniteGroup::dihedral(n);
  auto word = [n](std::int64_t rot, int flip) { return Element(Word{rot % n, flip}); };
  return verify_ske(Signature::of_periods({2, 2, 2, 2, 2}), group,
                    {word(1, 1), word(0, 1), word(g - 2, 1), word(0, 1), word(g - 1, 0)});
}

nlohmann::json to_json(const SkeCertificate& cert) {
  nlohmann::json images = nlohmann::json::array();
  for (const auto& x : cert.images) images.push_back(format_element(x));
  return {
      {"schema_version", kSchemaVersion},
      {"kind", "ske"},
      {"signature", cert.signature.spec()},
      {"group", cert.group.descriptor()},
      {"images", std::move(images)},
      {"kernel_genus", cert.kernel_genus},
      {"group_order", cert.group_order},
      {"verifier_version", kVersion},
  };
}

SkeCertificate ske_from_json(const nlohmann::json& doc, const GroupOptions& options) {
  std::string signature_text;
  std::string descriptor;
  std::vector<std::string> image_text;
  std::int64_t recorded_genus = 0;
  std::uint64_t recorded_order = 0;
  try {
    if (doc.at("schema_version").get<int>() != kSchemaVersion) {
      throw Error(ErrorKind::kParse, "unsupported schema_version");
    }
    if (doc.at("kind").get<std::string>() != "ske") {
      throw Error(ErrorKind::kParse, "not an SKE certificate");
    }
    signature_text = doc.at("signature").get<std::string>();
    descriptor = doc.at("group").get<std::string>();
    image_text = doc.at("images").get<std::vector<std::string>>();
    recorded_genus = doc.at("kernel_genus").get<std::int64_t>();
    recorded_order = doc.at("group_order").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("malformed SKE certificate: ") + e.what());
  }

  const Signature sig = Signature::parse(signature_text);
  const FiniteGroup group = construct(descriptor, options);
  std::vector<Element> images;
  for (const auto& text : image_text) images.push_back(group.parse_element(text));
  SkeCertificate cert = verify_ske(sig, group, std::move(images));
  if (cert.kernel_genus != recorded_genus || cert.group_order != recorded_order) {
    throw Error(ErrorKind::kVerificationFailed,
                "recorded genus " + std::to_string(recorded_genus) + " and order " +
                    std::to_string(recorded_order) + " disagree with recomputed " +
                    std::to_string(cert.kernel_genus) + " and " +
                    std::to_string(cert.group_order));
  }
  return cert;
}

}  // namespace narcert
