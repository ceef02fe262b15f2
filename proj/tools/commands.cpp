#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "narcert/bounds.hpp"
#include "narcert/covers.hpp"
#include "narcert/error.hpp"
#include "narcert/group.hpp"
#include "narcert/sigma_table.hpp"
#include "narcert/signature.hpp"
#include "narcert/ske.hpp"
#include "narcert/version.hpp"

namespace narcert::cli {
namespace {

using nlohmann::json;

GroupOptions group_options(const Caps& caps) {
  GroupOptions o;
  o.order_cap = caps.order_cap;
  return o;
}

// Width in code points, so π and → pad correctly.
std::size_t display_width(std::string_view s) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
}

std::string pad(std::string s, std::size_t width) {
  const std::size_t w = display_width(s);
  if (w < width) s.append(width - w, ' ');
  return s;
}

template <class Range, class F>
std::string join(const Range& items, std::string_view sep, F&& show) {
  std::string out;
  bool first = true;
  for (const auto& x : items) {
    if (!first) out += sep;
    first = false;
    out += show(x);
  }
  return out;
}

void emit(const json& doc) { std::cout << doc.dump() << '\n'; }

json envelope(std::string_view kind) {
  return json{{"schema_version", kSchemaVersion}, {"kind", kind}};
}

std::string bound_text(std::int64_t g, std::uint64_t bound) {
  const auto floor = static_cast<std::uint64_t>(4 * (g - 1));
  if (bound == floor) return std::to_string(bound) + " = 4(g-1)";
  std::string out = std::to_string(bound) + " > 4(g-1) = " + std::to_string(floor);
  if (bound % static_cast<std::uint64_t>(g - 1) == 0)
    out += ", = " + std::to_string(bound / static_cast<std::uint64_t>(g - 1)) + "(g-1)";
  return out;
}

std::string images_text(const std::vector<Element>& images) {
  return join(images, "; ", [](const Element& x) { return format_element(x); });
}

std::string witness_text(const Witness& w) {
  std::string out = w.label + ": ";
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, SkeCertificate>) {
          out += d.signature.str() + " -> " + d.group.descriptor();
        } else if constexpr (std::is_same_v<T, CoverCertificate>) {
          out += d.base.signature.str() + " -> " + d.base.group.descriptor() +
                 ", layer at p = " + std::to_string(d.prime);
        } else {
          out += "intersection of " + std::to_string(d.covers.size()) +
                 " covers, index " + std::to_string(d.index);
        }
      },
      w.data);
  out += ", order " + std::to_string(w.order());
  return out;
}

void print_ledger(const std::vector<LedgerEntry>& ledger) {
  for (const auto& e : ledger) {
    std::cout << "  s = " << pad(std::to_string(e.s), 4) << pad(std::string(to_string(e.discharge)), 14)
              << e.argument << '\n';
  }
}

void print_degree24(const Degree24Report& r) {
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  std::cout << "degree-24 analysis:\n"
            << "  " << pad("24 not a prime power", 26) << yn(r.not_prime_power) << '\n'
            << "  " << pad("point stabilizer bound", 26) << yn(r.stabilizer_bound) << '\n'
            << "  " << pad("listed orders > " + to_string(r.threshold), 26) << yn(r.orders_exceed)
            << '\n';
}

void print_genus(const GenusCertificate& c) {
  std::cout << "genus " << c.genus << '\n'
            << "bound " << bound_text(c.genus, c.bound) << '\n'
            << "status " << to_string(c.status) << '\n'
            << "witnesses:\n";
  for (const auto& w : c.witnesses) std::cout << "  " << witness_text(w) << '\n';
  if (!c.ledger.empty()) {
    std::cout << "ledger (p = " << c.genus - 1 << "):\n";
    print_ledger(c.ledger);
  }
  if (c.degree24) print_degree24(*c.degree24);
}

json sigma_json(const SigmaEntry& e) {
  return json{{"signature", e.signature.str()},
              {"mu", format_pi_multiple(e.mu_over_pi)},
              {"mu_over_pi", to_string(e.mu_over_pi)},
              {"s_over_r", to_string(e.s_over_r)},
              {"flag", to_string(e.flag)}};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kInvalidArgument, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Outcome of re-checking one certificate document.
struct Verdict {
  int code = kOk;
  std::size_t verified = 0;
  std::string error;
  std::string message;
  std::int64_t detail = -1;
};

std::size_t verify_document(const json& doc, const GroupOptions& options) {
  const std::string kind = doc.at("kind").get<std::string>();
  if (kind == "ske") {
    ske_from_json(doc, options);
    return 1;
  }
  if (kind == "cover") {
    cover_from_json(doc, options);
    return 1;
  }
  if (kind == "genus") {
    verify_genus_certificate(doc, options);
    return 1;
  }
  if (kind == "ske-search" || kind == "cover-search" || kind == "attained" || kind == "catalog") {
    std::size_t n = 0;
    for (const auto& c : doc.at("certificates")) n += verify_document(c, options);
    if (kind == "ske-search" && doc.at("mode") != "count" &&
        doc.at("count").get<std::size_t>() != n)
      throw Error(ErrorKind::kVerificationFailed, "count does not match the certificate list");
    return n;
  }
  throw Error(ErrorKind::kParse, "unknown certificate kind '" + kind + "'");
}

Verdict check_file(const Caps& caps, const std::string& file,
                   const std::vector<std::string>& accepted) {
  const std::string text = read_file(file);  // unreadable file is a usage error
  Verdict v;
  try {
    const json doc = json::parse(text);
    if (!accepted.empty()) {
      const std::string kind = doc.at("kind").get<std::string>();
      if (std::find(accepted.begin(), accepted.end(), kind) == accepted.end())
        throw Error(ErrorKind::kParse, "expected a certificate of kind " + accepted.front() +
                                           ", got '" + kind + "'");
    }
    v.verified = verify_document(doc, group_options(caps));
  } catch (const Error& e) {
    if (e.is_resource_limit()) throw;
    v.code = kFailed;
    v.error = std::string(to_string(e.kind()));
    v.message = e.what();
    v.detail = e.detail();
  } catch (const json::exception& e) {
    v.code = kFailed;
    v.error = std::string(to_string(ErrorKind::kParse));
    v.message = v.error + ": " + e.what();
  }
  return v;
}

int report_verdict(const Verdict& v, const std::string& file, bool json_out) {
  if (json_out) {
    json doc = envelope("verdict");
    doc["file"] = file;
    doc["valid"] = v.code == kOk;
    doc["verified"] = v.verified;
    if (v.code != kOk) {
      doc["error"] = v.error;
      doc["message"] = v.message;
      doc["detail"] = v.detail;
    }
    emit(doc);
  } else if (v.code == kOk) {
    std::cout << "valid: " << v.verified << " certificate" << (v.verified == 1 ? "" : "s")
              << " verified\n";
  } else {
    std::cout << "invalid: " << v.message << '\n';
  }
  return v.code;
}

}  // namespace

int cmd_table(const Caps&, bool check, bool json_out, const std::string& data_file) {
  const std::string text =
      data_file.empty() ? std::string(embedded_sigma_table_text()) : read_file(data_file);
  const SigmaTableLoad load = load_sigma_table(text);
  const bool clean = load.issues.empty();

  if (json_out) {
    json doc = envelope(check ? "table-check" : "table");
    if (check) {
      doc["verified"] = load.entries.size();
      json issues = json::array();
      for (const auto& i : load.issues)
        issues.push_back({{"line_number", i.line_number}, {"line", i.line}, {"reason", i.reason}});
      doc["issues"] = std::move(issues);
    } else {
      json entries = json::array();
      for (const auto& e : load.entries) entries.push_back(sigma_json(e));
      doc["entries"] = std::move(entries);
    }
    emit(doc);
  } else {
    if (!check && clean) {
      std::cout << pad("signature", 16) << pad("mu", 10) << pad("s/r", 8) << "flag\n";
      for (const auto& e : load.entries) {
        std::cout << pad(e.signature.str(), 16) << pad(format_pi_multiple(e.mu_over_pi), 10)
                  << pad(to_string(e.s_over_r), 8) << to_string(e.flag) << '\n';
      }
    }
    for (const auto& i : load.issues)
      std::cerr << "line " << i.line_number << ": " << i.reason << ": " << i.line << '\n';
    if (check) {
      std::cout << load.entries.size() << " signatures verified";
      if (!clean) std::cout << ", " << load.issues.size() << (load.issues.size() == 1 ? " row rejected" : " rows rejected");
      std::cout << '\n';
    }
  }
  return clean ? kOk : kFailed;
}

int cmd_measure(const std::string& signature, bool json_out) {
  const Signature sig = Signature::parse(signature);
  const Rational mu = measure(sig);
  const bool ok = sig.admissible();
  const AbelianInvariants ab = abelianization(sig);

  if (json_out) {
    json doc = envelope("measure");
    doc["signature"] = sig.spec();
    doc["display"] = sig.str();
    doc["mu"] = format_pi_multiple(mu);
    doc["mu_over_pi"] = to_string(mu);
    doc["admissible"] = ok;
    doc["generators"] = sig.generator_count();
    doc["abelianization"] = ab.str();
    if (ok) {
      const MeasureClass mc = measure_class(sig);
      doc["q"] = to_string(mc.q);
      doc["s_over_r"] = to_string(mc.s_over_r());
    }
    emit(doc);
    return kOk;
  }
  std::cout << pad("signature", 16) << sig.str() << '\n'
            << pad("mu", 16) << format_pi_multiple(mu) << '\n';
  if (ok) {
    const MeasureClass mc = measure_class(sig);
    std::cout << pad("q = r/s", 16) << to_string(mc.q) << '\n'
              << pad("s/r", 16) << to_string(mc.s_over_r()) << '\n';
  }
  std::cout << pad("admissible", 16) << (ok ? "yes" : "no") << '\n'
            << pad("generators", 16) << sig.generator_count() << '\n'
            << pad("abelianization", 16) << ab.str() << '\n';
  return kOk;
}

int cmd_constants(bool json_out) {
  const TheoremConstants& c = theorem_constants();
  if (json_out) {
    json doc = envelope("constants");
    doc["R"] = to_string(c.R);
    doc["S"] = to_string(c.S);
    doc["Pi"] = c.Pi;
    json ranking = json::array();
    for (const auto& r : c.s_ranking)
      ranking.push_back({{"s", to_string(r.s)}, {"signature", r.signature.spec()}});
    doc["s_ranking"] = std::move(ranking);
    emit(doc);
    return kOk;
  }
  std::cout << "R   " << to_string(c.R) << '\n'
            << "S   " << to_string(c.S) << '\n'
            << "Pi  " << join(c.Pi, ", ", [](std::uint64_t p) { return std::to_string(p); }) << '\n'
            << "s-ranking (r = 1):\n";
  for (const auto& r : c.s_ranking)
    std::cout << "  " << pad(to_string(r.s), 5) << r.signature.str() << '\n';
  return kOk;
}

int cmd_ske_verify(const Caps& caps, const std::string& file, bool json_out) {
  return report_verdict(check_file(caps, file, {"ske", "ske-search"}), file, json_out);
}

int cmd_verify(const Caps& caps, const std::string& file, bool json_out) {
  return report_verdict(check_file(caps, file, {}), file, json_out);
}

int cmd_ske_search(const Caps& caps, const std::string& signature, const std::string& group_desc,
                   const std::string& mode, bool dedup, bool json_out) {
  SearchOptions opts;
  if (mode == "first") opts.mode = SearchMode::kFirst;
  else if (mode == "all") opts.mode = SearchMode::kAll;
  else if (mode == "count") opts.mode = SearchMode::kCount;
  else throw Error(ErrorKind::kInvalidArgument, "mode must be first, all or count");
  opts.dedup = dedup;
  opts.node_budget = caps.node_budget;
  opts.threads = caps.threads;

  const Signature sig = Signature::parse(signature);
  if (!sig.admissible())
    throw Error(ErrorKind::kNonAdmissible, sig.str() + " is not a cocompact Fuchsian signature");
  const FiniteGroup group = construct(group_desc, group_options(caps));
  const IndexedGroup indexed(group);

  // Results stream as they arrive: --mode all can produce millions.
  std::int64_t genus = 0;
  bool have_genus = false;
  std::size_t emitted = 0;
  std::vector<Element> images;
  if (json_out) std::cout << "{\"certificates\":[";
  const SearchStats stats = visit_skes(sig, indexed, opts, [&](std::span<const std::uint32_t> idx) {
    if (!have_genus) {
      genus = kernel_genus(sig, static_cast<std::int64_t>(group.order()));
      have_genus = true;
    }
    images.clear();
    for (auto i : idx) images.push_back(indexed.element(i));
    if (json_out) {
      SkeCertificate cert{sig, group, images, genus, group.order()};
      if (emitted) std::cout << ',';
      std::cout << to_json(cert).dump();
    } else {
      std::cout << images_text(images) << '\n';
    }
    ++emitted;
    return true;
  });

  if (json_out) {
    json tail = envelope("ske-search");
    tail["signature"] = sig.spec();
    tail["group"] = group.descriptor();
    tail["mode"] = mode;
    tail["dedup"] = dedup;
    tail["count"] = stats.count;
    // Splice after the streamed array; dump() sorts keys and "certificates" sorts first.
    std::cout << "]," << tail.dump().substr(1) << '\n';
  } else if (opts.mode == SearchMode::kCount) {
    std::cout << "count " << stats.count << '\n';
  } else if (stats.count == 0) {
    std::cout << "none\n";
  } else {
    std::cout << stats.count << (stats.count == 1 ? " SKE" : " SKEs") << ", kernel genus "
              << genus << '\n';
  }
  return kOk;
}

int cmd_cover(const std::string& letter, std::uint64_t prime, bool json_out) {
  if (letter.size() != 1 || letter[0] < 'a' || letter[0] > 'g')
    throw Error(ErrorKind::kInvalidArgument, "case must be one of a..g");
  if (!is_prime(prime) || prime > 1'000'003)
    throw Error(ErrorKind::kInvalidArgument, std::to_string(prime) + " is not a usable prime");
  const KazazCase& kc = kazaz_case(letter[0]);
  const KernelPresentation kp(kazaz_base(kc));
  const HomologyAction h(kp, static_cast<std::uint32_t>(prime));
  std::vector<CoverCertificate> covers;
  for (const auto& w : invariant_hyperplanes(h)) covers.push_back(build_cover(kp, h, w));

  if (json_out) {
    json doc = envelope("cover-search");
    doc["case"] = letter;
    doc["signature"] = kc.signature.spec();
    doc["group"] = kp.base().group.descriptor();
    doc["prime"] = prime;
    doc["dimension"] = h.dimension();
    json list = json::array();
    for (const auto& c : covers) list.push_back(to_json(c));
    doc["certificates"] = std::move(list);
    emit(doc);
    return kOk;
  }
  std::cout << "case " << letter << ": " << kc.signature.str() << " -> "
            << kp.base().group.descriptor() << ", p = " << prime << '\n'
            << "H_1 dimension " << h.dimension() << '\n';
  if (covers.empty()) {
    std::cout << "no invariant hyperplane\n";
    return kOk;
  }
  std::cout << covers.size() << " invariant hyperplane" << (covers.size() == 1 ? "" : "s") << '\n';
  for (const auto& c : covers) {
    std::cout << "  f = ["
              << join(c.hyperplane.functional, " ", [](std::uint32_t x) { return std::to_string(x); })
              << "]  genus " << c.genus << ", bound " << c.bound << '\n';
  }
  return kOk;
}

int cmd_certify(std::int64_t genus, bool json_out) {
  if (genus < 2) throw Error(ErrorKind::kInvalidArgument, "genus must be at least 2");
  const GenusCertificate cert = certify_genus(genus);
  if (json_out) emit(to_json(cert));
  else print_genus(cert);
  return kOk;
}

int cmd_attained(std::int64_t max, bool json_out) {
  const std::vector<GenusCertificate> certs = attained_genera(max);
  if (json_out) {
    json doc = envelope("attained");
    doc["max"] = max;
    json genera = json::array();
    json list = json::array();
    for (const auto& c : certs) {
      genera.push_back(c.genus);
      list.push_back(to_json(c));
    }
    doc["genera"] = std::move(genera);
    doc["certificates"] = std::move(list);
    emit(doc);
    return kOk;
  }
  std::cout << "attained genera <= " << max << ": "
            << (certs.empty() ? std::string("none")
                              : join(certs, ", ", [](const GenusCertificate& c) {
                                  return std::to_string(c.genus);
                                }))
            << '\n';
  for (const auto& c : certs) {
    std::cout << "g = " << c.genus << " (p = " << c.genus - 1 << "): "
              << join(c.ledger, ", ",
                      [](const LedgerEntry& e) {
                        return std::to_string(e.s) + " " + std::string(to_string(e.discharge));
                      })
              << '\n';
  }
  return kOk;
}

int cmd_catalog(const Caps& caps, bool json_out) {
  const std::vector<GenusCertificate> certs = small_genus_catalog(caps.threads);
  if (json_out) {
    json doc = envelope("catalog");
    json list = json::array();
    for (const auto& c : certs) list.push_back(to_json(c));
    doc["certificates"] = std::move(list);
    emit(doc);
    return kOk;
  }
  std::cout << pad("g", 4) << pad("bound", 8) << pad("4(g-1)", 8) << "best witness\n";
  for (const auto& c : certs) {
    const auto best = std::max_element(c.witnesses.begin(), c.witnesses.end(),
                                       [](const Witness& a, const Witness& b) {
                                         return a.order() < b.order();
                                       });
    std::cout << pad(std::to_string(c.genus), 4) << pad(std::to_string(c.bound), 8)
              << pad(std::to_string(4 * (c.genus - 1)), 8) << best->label << '\n';
  }
  return kOk;
}

}  // namespace narcert::cli
