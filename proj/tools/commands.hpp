#pragma once

#include <cstdint>
#include <string>

namespace narcert::cli {

// 0 success, 1 a claimed certificate or table row failed, 2 bad input,
// 3 a resource cap was hit.
enum ExitCode : int { kOk = 0, kFailed = 1, kUsage = 2, kResource = 3 };

struct Caps {
  std::uint64_t order_cap = 1'000'000;
  std::uint64_t node_budget = 1'000'000'000;
  unsigned threads = 1;
};

int cmd_table(const Caps& caps, bool check, bool json, const std::string& data_file);
int cmd_measure(const std::string& signature, bool json);
int cmd_constants(bool json);
int cmd_ske_verify(const Caps& caps, const std::string& file, bool json);
int cmd_ske_search(const Caps& caps, const std::string& signature, const std::string& group,
                   const std::string& mode, bool dedup, bool json);
int cmd_cover(const std::string& letter, std::uint64_t prime, bool json);
int cmd_certify(std::int64_t genus, bool json);
int cmd_attained(std::int64_t max, bool json);
int cmd_catalog(const Caps& caps, bool json);
int cmd_verify(const Caps& caps, const std::string& file, bool json);

}  // namespace narcert::cli
