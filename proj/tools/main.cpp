#include <algorithm>
#include <exception>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "commands.hpp"
#include "narcert/error.hpp"
#include "narcert/version.hpp"

namespace cli = narcert::cli;

namespace {

int exit_code_for(const narcert::Error& e) {
  using narcert::ErrorKind;
  if (e.is_resource_limit()) return cli::kResource;
  switch (e.kind()) {
    case ErrorKind::kInvalidArgument:
    case ErrorKind::kParse:
    case ErrorKind::kNonAdmissible:
    case ErrorKind::kNonIntegralGenus:
      return cli::kUsage;
    default:
      return cli::kFailed;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certificates for automorphism groups of arithmetic Riemann surfaces"};
  app.set_version_flag("--version", std::string(narcert::kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  cli::Caps caps;
  app.add_option("--order-cap", caps.order_cap, "Largest permutation group closed eagerly")
      ->envname("NARCERT_ORDER_CAP");
  app.add_option("--node-budget", caps.node_budget, "Search nodes before giving up (exit 3)")
      ->envname("NARCERT_NODE_BUDGET");
  app.add_option("--threads", caps.threads, "Worker threads, 0 for all cores")
      ->envname("NARCERT_THREADS");

  bool json = false;
  auto json_flag = [&](CLI::App* sub) { sub->add_flag("--json", json, "Emit one JSON document"); };

  auto* table = app.add_subcommand("table", "Print or re-check the signature table");
  bool check = false;
  std::string data_file;
  table->add_flag("--check", check, "Recompute every row");
  table->add_option("--data", data_file, "Table file instead of the built-in copy")
      ->check(CLI::ExistingFile);
  json_flag(table);

  auto* measure = app.add_subcommand("measure", "Measure and class of a signature");
  std::string signature;
  measure->add_option("signature", signature, "e.g. 2,3,7 or g1p2")->required();
  json_flag(measure);

  auto* constants = app.add_subcommand("constants", "R, S, Pi and the s-ranking of the table");
  json_flag(constants);

  auto* ske = app.add_subcommand("ske", "Surface-kernel epimorphisms");
  ske->require_subcommand(1);
  ske->fallthrough();
  auto* ske_verify = ske->add_subcommand("verify", "Re-check a serialized certificate");
  std::string file;
  ske_verify->add_option("file", file)->required();
  json_flag(ske_verify);
  auto* ske_search = ske->add_subcommand("search", "Search for SKEs onto a group");
  std::string group;
  std::string mode = "first";
  bool dedup = false;
  ske_search->add_option("--signature", signature)->required();
  ske_search->add_option("--group", group, "e.g. dihedral:46, gl2_3, alternating:6")->required();
  ske_search->add_option("--mode", mode)->check(CLI::IsMember({"first", "all", "count"}));
  ske_search->add_flag("--dedup", dedup, "One tuple per simultaneous conjugacy class");
  json_flag(ske_search);

  auto* cover = app.add_subcommand("cover", "Invariant hyperplanes for a genus-2 case");
  std::string letter;
  std::uint64_t prime = 0;
  cover->add_option("--case", letter, "a..g")->required();
  cover->add_option("--prime", prime)->required();
  json_flag(cover);

  auto* certify = app.add_subcommand("certify", "Genus certificate");
  std::int64_t genus = 0;
  certify->add_option("--genus", genus)->required();
  json_flag(certify);

  auto* attained = app.add_subcommand("attained", "Genera where 4(g-1) is attained");
  std::int64_t max = 0;
  attained->add_option("--max", max)->required();
  json_flag(attained);

  auto* catalog = app.add_subcommand("catalog", "Witnesses for 2 <= g <= 23");
  json_flag(catalog);

  auto* verify = app.add_subcommand("verify", "Re-check any certificate file");
  verify->add_option("file", file)->required();
  json_flag(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kUsage;
  }
  if (caps.threads == 0) caps.threads = std::max(1u, std::thread::hardware_concurrency());

  try {
    if (*table) return cli::cmd_table(caps, check, json, data_file);
    if (*measure) return cli::cmd_measure(signature, json);
    if (*constants) return cli::cmd_constants(json);
    if (*ske_verify) return cli::cmd_ske_verify(caps, file, json);
    if (*ske_search) return cli::cmd_ske_search(caps, signature, group, mode, dedup, json);
    if (*cover) return cli::cmd_cover(letter, prime, json);
    if (*certify) return cli::cmd_certify(genus, json);
    if (*attained) return cli::cmd_attained(max, json);
    if (*catalog) return cli::cmd_catalog(caps, json);
    if (*verify) return cli::cmd_verify(caps, file, json);
  } catch (const narcert::Error& e) {
    std::cout.flush();
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cout.flush();
    std::cerr << "error: " << e.what() << '\n';
    return cli::kFailed;
  }
  return cli::kUsage;
}
