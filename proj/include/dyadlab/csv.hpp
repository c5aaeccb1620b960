#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace dyadlab {

/// Minimal CSV emitter: `#`-prefixed comment lines, one header row, then data
/// rows. Numbers are printed with %.17g so values round-trip exactly.
class CsvWriter {
 public:
  CsvWriter(const std::string& file, const std::vector<std::string>& columns,
            const std::vector<std::string>& comments);

  void row(const std::vector<std::string>& cells);

  static std::string num(double value);

 private:
  std::ofstream out_;
  std::size_t column_count_;
};

/// ISO-8601 UTC timestamp used in report headers.
std::string utc_timestamp();

}  // namespace dyadlab
