#include "cylresp/model.hpp"

#include <charconv>
#include <istream>
#include <sstream>
#include <string_view>
#include <vector>

#include "cylresp/bundled_data.hpp"

namespace cylresp {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_commas(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(',', start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view field, const char* name, std::size_t line) {
  T value{};
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc() || ptr != end)
    throw ParseError("bad " + std::string(name) + " '" + std::string(field) + "'", line);
  return value;
}

}  // namespace

void NaturalFrequencyTable::insert(int m, int mode, double khz, std::size_t line) {
  if (m < 0) throw ValidationError("line " + std::to_string(line) + ": negative m");
  if (mode < 1) throw ValidationError("line " + std::to_string(line) + ": mode index must be >= 1");
  if (!(khz > 0) || !std::isfinite(khz))
    throw ValidationError("line " + std::to_string(line) + ": frequency must be positive");
  if (!entries_.emplace(Key{m, mode}, khz).second)
    throw ValidationError("line " + std::to_string(line) + ": duplicate entry for m=" + std::to_string(m) +
                          " mode=" + std::to_string(mode));
}

std::optional<double> NaturalFrequencyTable::khz(int m, int mode) const {
  auto it = entries_.find({m, mode});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::map<int, double> NaturalFrequencyTable::for_m(int m) const {
  std::map<int, double> out;
  for (auto it = entries_.lower_bound({m, 0}); it != entries_.end() && it->first.first == m; ++it)
    out.emplace(it->first.second, it->second);
  return out;
}

std::optional<std::pair<int, double>> NaturalFrequencyTable::nearest(int m, double khz) const {
  std::optional<std::pair<int, double>> best;
  for (const auto& [mode, f] : for_m(m))
    if (!best || std::abs(f - khz) < std::abs(best->second - khz)) best = {mode, f};
  return best;
}

NaturalFrequencyTable load_natural_frequencies(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  NaturalFrequencyTable table;
  while (std::getline(in, line)) {
    ++lineno;
    const auto text = trim(line);
    if (text.empty()) continue;
    if (!have_header) {
      auto cols = split_commas(text);
      if (cols.size() != 3 || cols[0] != "m" || cols[1] != "mode" || cols[2] != "freq_khz")
        throw ParseError("expected header 'm,mode,freq_khz'", lineno);
      have_header = true;
      continue;
    }
    auto cols = split_commas(text);
    if (cols.size() != 3) throw ParseError("expected 3 fields, got " + std::to_string(cols.size()), lineno);
    const int m = parse_number<int>(cols[0], "m", lineno);
    const int mode = parse_number<int>(cols[1], "mode", lineno);
    const double f = parse_number<double>(cols[2], "freq_khz", lineno);
    table.insert(m, mode, f, lineno);
  }
  if (!have_header) throw ParseError("empty natural-frequency table (no header)", lineno);

  int current_m = -1;
  double prev = 0.0;
  for (const auto& [key, f] : table.entries()) {
    if (key.first != current_m) {
      current_m = key.first;
      prev = f;
      continue;
    }
    if (!(f > prev))
      throw ValidationError("frequencies for m=" + std::to_string(key.first) + " are not increasing at mode " +
                            std::to_string(key.second));
    prev = f;
  }
  return table;
}

const NaturalFrequencyTable& bundled_natural_frequencies() {
  static const NaturalFrequencyTable table = [] {
    std::istringstream in{std::string(bundled::kNaturalFrequenciesCsv)};
    return load_natural_frequencies(in);
  }();
  return table;
}

}  // namespace cylresp
