#include "narcert/group.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>
#include <mutex>
#include <numeric>
#include <unordered_set>

#include "narcert/arith.hpp"
#include "narcert/error.hpp"

namespace narcert {

namespace {

struct PermHash {
  std::size_t operator()(const Permutation& p) const {
    std::size_t h = 1469598103934665603ULL;
    for (auto v : p) {
      h ^= v;
      h *= 1099511628211ULL;
    }
    return h;
  }
};

std::int64_t mod(std::int64_t x, std::int64_t n) {
  const std::int64_t r = x % n;
  return r < 0 ? r + n : r;
}

Permutation compose(const Permutation& x, const Permutation& y) {
  Permutation out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = y[x[i]];
  return out;
}

Permutation identity_permutation(std::uint32_t degree) {
  Permutation out(degree);
  std::iota(out.begin(), out.end(), 0U);
  return out;
}

bool is_permutation(const Permutation& p) {
  std::vector<char> seen(p.size(), 0);
  for (auto v : p) {
    if (v >= p.size() || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::int64_t parse_i64(std::string_view text, std::string_view context) {
  std::int64_t value = 0;
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), last, value);
  if (text.empty() || ec != std::errc() || ptr != last) {
    throw Error(ErrorKind::kParse, "bad integer '" + std::string(text) + "' in '" +
                                       std::string(context) + "'");
  }
  return value;
}

std::uint64_t permutation_order(const Permutation& p) {
  std::vector<char> seen(p.size(), 0);
  std::uint64_t order = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0;
    for (std::size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = 1;
      ++len;
    }
    order = lcm_u64(order, len);
  }
  return order;
}

}  // namespace

std::size_t Element::hash() const {
  if (is_word()) {
    const auto& w = word();
    return std::hash<std::int64_t>{}(w.rot * 2 + w.flip);
  }
  return PermHash{}(permutation());
}

std::string format_element(const Element& x) {
  if (x.is_word()) {
    const Word& w = x.word();
    if (w.rot == 0 && w.flip == 0) return "1";
    std::string out;
    if (w.rot == 1) out = "a";
    else if (w.rot != 0) out = "a^" + std::to_string(w.rot);
    if (w.flip) out += "b";
    return out;
  }
  std::string out;
  for (std::size_t i = 0; i < x.permutation().size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(x.permutation()[i] + 1);
  }
  return out;
}

struct FiniteGroup::Impl {
  std::string descriptor;
  Backend backend = Backend::kPermutation;
  std::int64_t n = 0;
  std::uint32_t degree = 0;
  std::uint64_t order = 0;
  std::uint64_t order_cap = GroupOptions{}.order_cap;
  std::vector<Element> generators;
  std::vector<Element> elements;  // permutation groups only
  std::unordered_set<Permutation, PermHash> members;

  mutable std::once_flag lazy_once;
  mutable std::vector<Element> lazy_elements;
};

FiniteGroup FiniteGroup::cyclic(std::int64_t n) {
  if (n < 1) throw Error(ErrorKind::kInvalidArgument, "cyclic group order must be positive");
  auto impl = std::make_shared<Impl>();
  impl->descriptor = "cyclic:" + std::to_string(n);
  impl->backend = Backend::kCyclic;
  impl->n = n;
  impl->order = static_cast<std::uint64_t>(n);
  impl->generators = {Element(Word{n == 1 ? 0 : 1, 0})};
  return FiniteGroup(std::move(impl));
}

FiniteGroup FiniteGroup::dihedral(std::int64_t n) {
  if (n < 1 || n > (std::int64_t{1} << 61)) {
    throw Error(ErrorKind::kInvalidArgument, "dihedral parameter out of range");
  }
  auto impl = std::make_shared<Impl>();
  impl->descriptor = "dihedral:" + std::to_string(n);
  impl->backend = Backend::kDihedral;
  impl->n = n;
  impl->order = 2 * static_cast<std::uint64_t>(n);
  impl->generators = {Element(Word{n == 1 ? 0 : 1, 0}), Element(Word{0, 1})};
  return FiniteGroup(std::move(impl));
}

FiniteGroup FiniteGroup::from_permutations(std::string descriptor, std::uint32_t degree,
                                           std::vector<Permutation> generators,
                                           const GroupOptions& options) {
  if (degree == 0) throw Error(ErrorKind::kInvalidArgument, "permutation degree must be positive");
  if (degree > options.degree_cap) {
    throw Error(ErrorKind::kOrderCapExceeded,
                "degree " + std::to_string(degree) + " exceeds cap " +
                    std::to_string(options.degree_cap));
  }
  auto impl = std::make_shared<Impl>();
  impl->descriptor = std::move(descriptor);
  impl->degree = degree;
  impl->order_cap = options.order_cap;
  for (auto& g : generators) {
    if (g.size() != degree || !is_permutation(g)) {
      throw Error(ErrorKind::kInvalidArgument, "generator is not a permutation of degree " +
                                                   std::to_string(degree));
    }
    impl->generators.emplace_back(std::move(g));
  }

  Permutation id = identity_permutation(degree);
  std::deque<const Permutation*> queue;
  queue.push_back(&*impl->members.insert(id).first);
  while (!queue.empty()) {
    const Permutation& x = *queue.front();
    queue.pop_front();
    for (const auto& g : impl->generators) {
      auto [it, inserted] = impl->members.insert(compose(x, g.permutation()));
      if (!inserted) continue;
      if (impl->members.size() > options.order_cap) {
        throw Error(ErrorKind::kOrderCapExceeded,
                    impl->descriptor + " has more than " + std::to_string(options.order_cap) +
                        " elements");
      }
      queue.push_back(&*it);
    }
  }
  impl->elements.reserve(impl->members.size());
  for (const auto& p : impl->members) impl->elements.emplace_back(p);
  std::sort(impl->elements.begin(), impl->elements.end());
  impl->order = impl->elements.size();
  return FiniteGroup(std::move(impl));
}

const std::string& FiniteGroup::descriptor() const { return impl_->descriptor; }
Backend FiniteGroup::backend() const { return impl_->backend; }
std::int64_t FiniteGroup::modulus() const { return impl_->n; }
std::uint32_t FiniteGroup::degree() const { return impl_->degree; }
std::uint64_t FiniteGroup::order() const { return impl_->order; }
const std::vector<Element>& FiniteGroup::generators() const { return impl_->generators; }

Element FiniteGroup::identity() const {
  if (is_parametric()) return Element(Word{});
  return Element(identity_permutation(impl_->degree));
}

Element FiniteGroup::multiply(const Element& x, const Element& y) const {
  switch (impl_->backend) {
    case Backend::kCyclic:
      return Element(Word{mod(x.word().rot + y.word().rot, impl_->n), 0});
    case Backend::kDihedral: {
      const Word& u = x.word();
      const Word& v = y.word();
      const std::int64_t j = u.flip ? -v.rot : v.rot;
      return Element(Word{mod(u.rot + j, impl_->n), u.flip ^ v.flip});
    }
    case Backend::kPermutation:
      return Element(compose(x.permutation(), y.permutation()));
  }
  return x;
}

Element FiniteGroup::inverse(const Element& x) const {
  switch (impl_->backend) {
    case Backend::kCyclic:
      return Element(Word{mod(-x.word().rot, impl_->n), 0});
    case Backend::kDihedral:
      if (x.word().flip) return x;
      return Element(Word{mod(-x.word().rot, impl_->n), 0});
    case Backend::kPermutation: {
      const auto& p = x.permutation();
      Permutation out(p.size());
      for (std::uint32_t i = 0; i < p.size(); ++i) out[p[i]] = i;
      return Element(std::move(out));
    }
  }
  return x;
}

Element FiniteGroup::power(const Element& x, std::int64_t k) const {
  Element base = k < 0 ? inverse(x) : x;
  // Negating INT64_MIN overflows; split off one factor first.
  std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
  Element acc = identity();
  while (e) {
    if (e & 1) acc = multiply(acc, base);
    e >>= 1;
    if (e) base = multiply(base, base);
  }
  return acc;
}

bool FiniteGroup::contains(const Element& x) const {
  switch (impl_->backend) {
    case Backend::kCyclic:
      return x.is_word() && x.word().flip == 0 && x.word().rot >= 0 && x.word().rot < impl_->n;
    case Backend::kDihedral:
      return x.is_word() && (x.word().flip == 0 || x.word().flip == 1) && x.word().rot >= 0 &&
             x.word().rot < impl_->n;
    case Backend::kPermutation:
      return !x.is_word() && impl_->members.count(x.permutation()) > 0;
  }
  return false;
}

const std::vector<Element>& FiniteGroup::elements() const {
  if (!is_parametric()) return impl_->elements;
  if (impl_->order > impl_->order_cap) {
    throw Error(ErrorKind::kOrderCapExceeded,
                impl_->descriptor + " has order " + std::to_string(impl_->order) +
                    ", above the enumeration cap " + std::to_string(impl_->order_cap));
  }
  std::call_once(impl_->lazy_once, [this] {
    const int flips = impl_->backend == Backend::kDihedral ? 2 : 1;
    impl_->lazy_elements.reserve(impl_->order);
    for (std::int64_t i = 0; i < impl_->n; ++i) {
      for (int e = 0; e < flips; ++e) impl_->lazy_elements.emplace_back(Word{i, e});
    }
  });
  return impl_->lazy_elements;
}

Element FiniteGroup::parse_element(std::string_view text) const {
  const std::string_view s = trim(text);
  if (is_parametric()) {
    if (s == "1" || s == "e") return identity();
    std::size_t pos = 0;
    Word w;
    if (pos < s.size() && s[pos] == 'a') {
      ++pos;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        const auto end = s.find('b', pos);
        const auto digits = s.substr(pos, end == std::string_view::npos ? end : end - pos);
        w.rot = mod(parse_i64(digits, s), impl_->n);
        pos += digits.size();
      } else {
        w.rot = mod(1, impl_->n);
      }
    }
    if (pos < s.size() && s[pos] == 'b') {
      if (impl_->backend == Backend::kCyclic) {
        throw Error(ErrorKind::kParse, "cyclic group has no generator b: '" + std::string(s) + "'");
      }
      w.flip = 1;
      ++pos;
    }
    if (pos == 0 || pos != s.size()) {
      throw Error(ErrorKind::kParse, "bad word '" + std::string(s) + "'");
    }
    return Element(w);
  }

  Permutation p;
  std::size_t start = 0;
  while (start < s.size()) {
    while (start < s.size() && (s[start] == ' ' || s[start] == ',')) ++start;
    if (start >= s.size()) break;
    auto end = start;
    while (end < s.size() && s[end] != ' ' && s[end] != ',') ++end;
    const std::int64_t v = parse_i64(s.substr(start, end - start), s);
    if (v < 1 || v > static_cast<std::int64_t>(impl_->degree)) {
      throw Error(ErrorKind::kParse, "point " + std::to_string(v) + " outside 1.." +
                                         std::to_string(impl_->degree));
    }
    p.push_back(static_cast<std::uint32_t>(v - 1));
    start = end;
  }
  if (p.size() != impl_->degree || !is_permutation(p)) {
    throw Error(ErrorKind::kParse, "'" + std::string(s) + "' is not a permutation of degree " +
                                       std::to_string(impl_->degree));
  }
  Element x(std::move(p));
  if (!contains(x)) {
    throw Error(ErrorKind::kInvalidArgument,
                "'" + std::string(s) + "' is not an element of " + impl_->descriptor);
  }
  return x;
}

FiniteGroup FiniteGroup::to_permutation_group(const GroupOptions& options) const {
  if (!is_parametric()) return *this;
  const std::int64_t n = impl_->n;
  if (impl_->order > options.degree_cap) {
    throw Error(ErrorKind::kOrderCapExceeded,
                impl_->descriptor + " is too large for a permutation model");
  }
  const auto deg = static_cast<std::uint32_t>(n);
  if (impl_->backend == Backend::kCyclic) {
    Permutation a(deg);
    for (std::uint32_t i = 0; i < deg; ++i) a[i] = (i + 1) % deg;
    return from_permutations(impl_->descriptor, deg, {a}, options);
  }
  if (n >= 3) {
    Permutation a(deg), b(deg);
    for (std::uint32_t i = 0; i < deg; ++i) {
      a[i] = (i + 1) % deg;
      b[i] = (deg - i) % deg;
    }
    return from_permutations(impl_->descriptor, deg, {a, b}, options);
  }
  // D1 and D2 have no faithful polygon action; use the regular one.
  const auto& elems = elements();
  const auto size = static_cast<std::uint32_t>(elems.size());
  auto index = [&](const Element& x) {
    return static_cast<std::uint32_t>(std::lower_bound(elems.begin(), elems.end(), x) -
                                      elems.begin());
  };
  std::vector<Permutation> gens;
  for (const auto& g : impl_->generators) {
    Permutation p(size);
    for (std::uint32_t i = 0; i < size; ++i) p[i] = index(multiply(elems[i], g));
    gens.push_back(std::move(p));
  }
  return from_permutations(impl_->descriptor, size, std::move(gens), options);
}

namespace {

// Regular representation of a^n = 1, b^2 = a^c, b^-1 a b = a^t, for t an
// involution mod n. Elements a^i b^e are numbered e*n + i.
FiniteGroup metacyclic_regular(std::string descriptor, std::int64_t n, std::int64_t t,
                               std::int64_t c) {
  auto mul = [&](std::int64_t i, int e, std::int64_t j, int f) {
    std::int64_t rot = i + (e ? j * t : j);
    int flip = e + f;
    if (flip == 2) {
      rot += c;
      flip = 0;
    }
    return static_cast<std::uint32_t>(flip * n + mod(rot, n));
  };
  const auto size = static_cast<std::uint32_t>(2 * n);
  Permutation a(size), b(size);
  for (std::uint32_t x = 0; x < size; ++x) {
    const std::int64_t i = x % n;
    const int e = static_cast<int>(x / n);
    a[x] = mul(i, e, 1, 0);
    b[x] = mul(i, e, 0, 1);
  }
  return FiniteGroup::from_permutations(std::move(descriptor), size, {a, b});
}

using Mat = Matrix3x2;

Mat mat_mul(const Mat& x, const Mat& y) {
  Mat out{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out[i][j] = (x[i][0] * y[0][j] + x[i][1] * y[1][j]) % 3;
  }
  return out;
}

Mat reduce3(const Mat& m) {
  Mat out{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out[i][j] = static_cast<int>(mod(m[i][j], 3));
  }
  return out;
}

constexpr Mat kIdentity3{{{1, 0}, {0, 1}}};

// Row vector action v ↦ vM on the point v = (x, y) numbered 3x + y.
std::uint32_t act(const Mat& m, std::uint32_t v) {
  const int x = static_cast<int>(v / 3);
  const int y = static_cast<int>(v % 3);
  const int nx = (x * m[0][0] + y * m[1][0]) % 3;
  const int ny = (x * m[0][1] + y * m[1][1]) % 3;
  return static_cast<std::uint32_t>(3 * nx + ny);
}

std::string wrap_factor(const std::string& descriptor) {
  if (descriptor.find(',') == std::string::npos) return descriptor;
  return "(" + descriptor + ")";
}

std::string_view strip_parens(std::string_view s) {
  s = trim(s);
  while (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
    int depth = 0;
    bool encloses = true;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '(') ++depth;
      if (s[i] == ')') --depth;
      if (depth == 0 && i + 1 < s.size()) {
        encloses = false;
        break;
      }
    }
    if (!encloses) break;
    s = trim(s.substr(1, s.size() - 2));
  }
  return s;
}

}  // namespace

FiniteGroup klein_four() {
  return FiniteGroup::from_permutations("klein_four", 4, {{1, 0, 3, 2}, {2, 3, 0, 1}});
}

FiniteGroup quaternion8() { return metacyclic_regular("quaternion8", 4, -1, 2); }

FiniteGroup semidihedral16() { return metacyclic_regular("semidihedral16", 8, 3, 0); }

FiniteGroup symmetric(std::uint32_t n, const GroupOptions& options) {
  if (n < 1) throw Error(ErrorKind::kInvalidArgument, "symmetric degree must be positive");
  std::vector<Permutation> gens;
  if (n >= 2) {
    Permutation t = identity_permutation(n);
    std::swap(t[0], t[1]);
    gens.push_back(t);
  }
  if (n >= 3) {
    Permutation c(n);
    for (std::uint32_t i = 0; i < n; ++i) c[i] = (i + 1) % n;
    gens.push_back(c);
  }
  return FiniteGroup::from_permutations("symmetric:" + std::to_string(n), n, std::move(gens),
                                        options);
}

FiniteGroup alternating(std::uint32_t n, const GroupOptions& options) {
  if (n < 1) throw Error(ErrorKind::kInvalidArgument, "alternating degree must be positive");
  std::vector<Permutation> gens;
  for (std::uint32_t i = 2; i < n; ++i) {
    Permutation c = identity_permutation(n);
    c[0] = 1;
    c[1] = i;
    c[i] = 0;
    gens.push_back(std::move(c));
  }
  return FiniteGroup::from_permutations("alternating:" + std::to_string(n), n, std::move(gens),
                                        options);
}

FiniteGroup gl2_3() {
  std::vector<std::uint32_t> points;  // nonzero vectors, numbered 3x + y
  for (std::uint32_t v = 1; v < 9; ++v) points.push_back(v);
  auto as_perm = [&](const Mat& m) {
    Permutation p(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto image = act(m, points[i]);
      p[i] = static_cast<std::uint32_t>(
          std::find(points.begin(), points.end(), image) - points.begin());
    }
    return p;
  };
  return FiniteGroup::from_permutations(
      "gl2_3", 8,
      {as_perm({{{1, 1}, {0, 1}}}), as_perm({{{1, 0}, {1, 1}}}), as_perm({{{2, 0}, {0, 1}}})});
}

FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h,
                           const GroupOptions& options) {
  const FiniteGroup pg = g.to_permutation_group(options);
  const FiniteGroup ph = h.to_permutation_group(options);
  const std::uint32_t dg = pg.degree();
  const std::uint32_t dh = ph.degree();
  std::vector<Permutation> gens;
  for (const auto& x : pg.generators()) {
    Permutation p = identity_permutation(dg + dh);
    std::copy(x.permutation().begin(), x.permutation().end(), p.begin());
    gens.push_back(std::move(p));
  }
  for (const auto& y : ph.generators()) {
    Permutation p = identity_permutation(dg + dh);
    for (std::uint32_t i = 0; i < dh; ++i) p[dg + i] = dg + y.permutation()[i];
    gens.push_back(std::move(p));
  }
  return FiniteGroup::from_permutations(
      "product:" + wrap_factor(g.descriptor()) + "," + h.descriptor(), dg + dh,
      std::move(gens), options);
}

FiniteGroup semidirect_c3xc3_d4(const Matrix3x2& rotation, const Matrix3x2& reflection) {
  const Mat r = reduce3(rotation);
  const Mat s = reduce3(reflection);
  auto pw = [](Mat m, int k) {
    Mat acc = kIdentity3;
    while (k-- > 0) acc = mat_mul(acc, m);
    return acc;
  };
  std::vector<Mat> closure{kIdentity3};
  for (std::size_t i = 0; i < closure.size() && closure.size() <= 48; ++i) {
    for (const Mat& gen : {r, s}) {
      const Mat next = mat_mul(closure[i], gen);
      if (std::find(closure.begin(), closure.end(), next) == closure.end()) {
        closure.push_back(next);
      }
    }
  }
  const Mat sr = mat_mul(s, r);
  if (pw(r, 4) != kIdentity3 || pw(r, 2) == kIdentity3 || pw(s, 2) != kIdentity3 ||
      s == kIdentity3 || pw(sr, 2) != kIdentity3 || closure.size() != 8) {
    throw Error(ErrorKind::kInvalidArgument,
                "rotation and reflection do not define a faithful D4 action on C3xC3");
  }

  std::vector<Permutation> gens;
  for (std::uint32_t shift : {3U, 1U}) {  // (1,0) and (0,1)
    Permutation t(9);
    for (std::uint32_t v = 0; v < 9; ++v) {
      const std::uint32_t x = (v / 3 + shift / 3) % 3;
      const std::uint32_t y = (v % 3 + shift % 3) % 3;
      t[v] = 3 * x + y;
    }
    gens.push_back(std::move(t));
  }
  for (const Mat& m : {r, s}) {
    Permutation p(9);
    for (std::uint32_t v = 0; v < 9; ++v) p[v] = act(m, v);
    gens.push_back(std::move(p));
  }
  std::string descriptor = "semidirect:C3xC3:D4:";
  for (const Mat* m : {&r, &s}) {
    if (m == &s) descriptor += ';';
    descriptor += std::to_string((*m)[0][0]) + "," + std::to_string((*m)[0][1]) + "," +
                  std::to_string((*m)[1][0]) + "," + std::to_string((*m)[1][1]);
  }
  return FiniteGroup::from_permutations(std::move(descriptor), 9, std::move(gens));
}

FiniteGroup construct(std::string_view descriptor, const GroupOptions& options) {
  const std::string_view s = strip_parens(descriptor);
  const std::string text(s);
  if (s.empty()) throw Error(ErrorKind::kParse, "empty group descriptor");

  auto positive = [&](std::string_view digits) {
    const std::int64_t n = parse_i64(digits, text);
    if (n < 1) throw Error(ErrorKind::kParse, "group parameter must be positive in '" + text + "'");
    return n;
  };
  auto small = [&](std::int64_t n) {
    if (n > static_cast<std::int64_t>(options.degree_cap)) {
      throw Error(ErrorKind::kOrderCapExceeded, "degree of '" + text + "' exceeds the cap");
    }
    return static_cast<std::uint32_t>(n);
  };

  if (s.rfind("product:", 0) == 0) {
    const std::string_view body = s.substr(8);
    int depth = 0;
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (body[i] == '(') ++depth;
      if (body[i] == ')') --depth;
      if (body[i] == ',' && depth == 0) {
        return direct_product(construct(body.substr(0, i), options),
                              construct(body.substr(i + 1), options), options);
      }
    }
    throw Error(ErrorKind::kParse, "product needs two factors: '" + text + "'");
  }
  if (s.rfind("semidirect:C3xC3:D4:", 0) == 0) {
    const std::string_view body = s.substr(20);
    std::vector<int> entries;
    std::size_t start = 0;
    const auto semi = body.find(';');
    if (semi == std::string_view::npos) {
      throw Error(ErrorKind::kParse, "semidirect needs two matrices separated by ';'");
    }
    for (const auto part : {body.substr(0, semi), body.substr(semi + 1)}) {
      start = 0;
      int count = 0;
      while (true) {
        const auto comma = part.find(',', start);
        entries.push_back(static_cast<int>(parse_i64(trim(part.substr(start, comma - start)), text)));
        ++count;
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
      if (count != 4) throw Error(ErrorKind::kParse, "each matrix needs 4 entries: '" + text + "'");
    }
    const Mat r{{{entries[0], entries[1]}, {entries[2], entries[3]}}};
    const Mat m{{{entries[4], entries[5]}, {entries[6], entries[7]}}};
    return semidirect_c3xc3_d4(r, m);
  }

  if (s == "klein_four" || s == "V4") return klein_four();
  if (s == "quaternion8" || s == "Q8") return quaternion8();
  if (s == "semidihedral16" || s == "SD16") return semidihedral16();
  if (s == "gl2_3" || s == "GL23" || s == "GL(2,3)") return gl2_3();

  const auto colon = s.find(':');
  if (colon != std::string_view::npos) {
    const std::string_view name = s.substr(0, colon);
    const std::int64_t n = positive(s.substr(colon + 1));
    if (name == "cyclic") return FiniteGroup::cyclic(n);
    if (name == "dihedral") return FiniteGroup::dihedral(n);
    if (name == "symmetric") return symmetric(small(n), options);
    if (name == "alternating") return alternating(small(n), options);
    throw Error(ErrorKind::kParse, "unknown group family '" + std::string(name) + "'");
  }
  if (s.size() >= 2 && std::isdigit(static_cast<unsigned char>(s[1]))) {
    const std::int64_t n = positive(s.substr(1));
    switch (s[0]) {
      case 'C': return FiniteGroup::cyclic(n);
      case 'D': return FiniteGroup::dihedral(n);
      case 'S': return symmetric(small(n), options);
      case 'A': return alternating(small(n), options);
      default: break;
    }
  }
  throw Error(ErrorKind::kParse, "unknown group descriptor '" + text + "'");
}

Element word_in_model(const FiniteGroup& model, const Word& w) {
  const auto& gens = model.generators();
  Element out = model.power(gens.at(0), w.rot);
  if (w.flip) out = model.multiply(out, gens.at(1));
  return out;
}

std::uint64_t element_order(const FiniteGroup& group, const Element& x) {
  if (!group.is_parametric()) return permutation_order(x.permutation());
  if (x.word().flip) return 2;
  const auto n = static_cast<std::uint64_t>(group.modulus());
  return n / gcd_u64(n, static_cast<std::uint64_t>(x.word().rot));
}

bool generates(const FiniteGroup& group, std::span<const Element> set) {
  if (group.is_parametric()) {
    auto g = static_cast<std::uint64_t>(group.modulus());
    const Word* reflection = nullptr;
    for (const auto& x : set) {
      const Word& w = x.word();
      if (w.flip) {
        if (reflection) g = gcd_u64(g, static_cast<std::uint64_t>(mod(w.rot - reflection->rot, group.modulus())));
        else reflection = &w;
      } else {
        g = gcd_u64(g, static_cast<std::uint64_t>(w.rot));
      }
    }
    if (group.backend() == Backend::kDihedral && !reflection) return false;
    return g == 1;
  }
  std::unordered_set<Permutation, PermHash> seen;
  std::deque<const Permutation*> queue;
  queue.push_back(&*seen.insert(identity_permutation(group.degree())).first);
  while (!queue.empty()) {
    const Permutation& x = *queue.front();
    queue.pop_front();
    for (const auto& s : set) {
      auto [it, inserted] = seen.insert(compose(x, s.permutation()));
      if (inserted) queue.push_back(&*it);
    }
  }
  return seen.size() == group.order();
}

std::uint64_t exponent(const FiniteGroup& group) {
  if (group.is_parametric()) {
    const auto n = static_cast<std::uint64_t>(group.modulus());
    return group.backend() == Backend::kDihedral ? lcm_u64(n, 2) : n;
  }
  std::uint64_t out = 1;
  for (const auto& x : group.elements()) out = lcm_u64(out, element_order(group, x));
  return out;
}

IndexedGroup::IndexedGroup(FiniteGroup group, std::uint32_t table_cap)
    : group_(std::move(group)), elements_(&group_.elements()) {
  const std::uint32_t n = size();
  index_.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) index_.emplace(element(i), i);
  inverse_.resize(n);
  orders_.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    inverse_[i] = index_of(group_.inverse(element(i)));
    orders_[i] = static_cast<std::uint32_t>(element_order(group_, element(i)));
  }
  if (n <= table_cap) {
    std::vector<std::uint32_t> table(static_cast<std::size_t>(n) * n);
    for (std::uint32_t i = 0; i < n; ++i) {
      for (std::uint32_t j = 0; j < n; ++j) {
        table[static_cast<std::size_t>(i) * n + j] =
            index_of(group_.multiply(element(i), element(j)));
      }
    }
    table_ = std::move(table);
  }
}

std::uint32_t IndexedGroup::index_of(const Element& x) const {
  const auto it = index_.find(x);
  if (it == index_.end()) {
    throw Error(ErrorKind::kInvalidArgument,
                format_element(x) + " is not an element of " + group_.descriptor());
  }
  return it->second;
}

bool IndexedGroup::generates(std::span<const std::uint32_t> set) const {
  if (group_.is_parametric()) {
    std::vector<Element> elems;
    for (auto i : set) elems.push_back(element(i));
    return narcert::generates(group_, elems);
  }
  std::vector<char> seen(size(), 0);
  std::vector<std::uint32_t> queue{index_of(group_.identity())};
  seen[queue.front()] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (auto s : set) {
      const auto next = mul(queue[head], s);
      if (!seen[next]) {
        seen[next] = 1;
        queue.push_back(next);
      }
    }
  }
  return queue.size() == size();
}

}  // namespace narcert
