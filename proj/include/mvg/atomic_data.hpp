#pragma once
// Generated by tools/derive_atomics; keep in sync with data/atomic_blocks.json.

#include <string>
#include <utility>
#include <vector>

namespace mvg {

struct AtomicRecord {
  std::string name;
  std::string width;
  std::string height;
  std::vector<std::pair<std::string, std::string>> points;
};

inline const std::vector<AtomicRecord>& atomic_records() {
  static const std::vector<AtomicRecord> records{
      {"R3", "36/49", "1", {{"12/49", "3/14"}, {"12/49", "11/14"}, {"30/49", "1/2"}}},
      {"R3'", "36/49", "1", {{"6/49", "1/2"}, {"24/49", "3/14"}, {"24/49", "11/14"}}},
      {"R5", "60/49", "1", {{"12/49", "3/14"}, {"12/49", "11/14"}, {"30/49", "1/2"}, {"48/49", "3/14"}, {"48/49", "11/14"}}},
  };
  return records;
}

}  // namespace mvg
