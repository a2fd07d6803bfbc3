#pragma once

#include <map>

#include "k3lat/io.hpp"

namespace k3lat {

struct CheckReport {
  std::string check_id;
  std::string anchor;
  std::string status;  // "pass" | "fail" | "inconclusive"
  OJson details;
  long runtime_ms = 0;

  OJson to_json(bool stable) const;
};

using CheckParams = std::map<std::string, std::string>;

struct CheckDef {
  std::string id;
  std::string anchor;     // the statement the check mechanizes
  std::string suite;      // "lattice" | "order2" | "order3"
  std::string operation;  // module operation exercised
};

const std::vector<CheckDef>& check_registry();
bool is_known_check(const std::string& id);

CheckReport run_check(const std::string& id, const CheckParams& params = {});
std::vector<CheckReport> verify_all(const std::string& suite = "all",
                                    const CheckParams& params = {});

std::string manifest_text();  // id -> anchor -> operation table

}  // namespace k3lat
