#include "dyadlab/csv.hpp"

#include <cstdio>
#include <ctime>
#include <stdexcept>

namespace dyadlab {

CsvWriter::CsvWriter(const std::string& file, const std::vector<std::string>& columns,
                     const std::vector<std::string>& comments)
    : out_(file), column_count_(columns.size()) {
  if (!out_) throw std::runtime_error("CsvWriter: cannot open " + file);
  for (const auto& comment : comments) out_ << "# " << comment << "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) {
    out_ << columns[i] << (i + 1 < columns.size() ? "," : "\n");
  }
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != column_count_) throw std::invalid_argument("CsvWriter: column mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    out_ << cells[i] << (i + 1 < cells.size() ? "," : "\n");
  }
}

std::string CsvWriter::num(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

}  // namespace dyadlab
