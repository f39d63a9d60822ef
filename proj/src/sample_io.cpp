#include "cauchy/sample_io.hpp"

#include <cstdio>
#include <fstream>

#include "cauchy/errors.hpp"
#include "cauchy/halfplane.hpp"

namespace cauchy {

namespace {

std::string trim(const std::string& line) {
  const auto first = line.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = line.find_last_not_of(" \t\r,");
  return line.substr(first, last - first + 1);
}

}  // namespace

std::vector<double> parse_sample_csv(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    try {
      values.push_back(parse_real(body));
    } catch (const DomainError&) {
      throw DomainError("line " + std::to_string(line_no) + ": expected a finite number, got '" +
                        body + "'");
    }
  }
  return values;
}

std::vector<double> read_sample_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open input file '" + path.string() + "'");
  try {
    return parse_sample_csv(in);
  } catch (const DomainError& e) {
    throw DomainError(path.string() + ": " + e.what());
  }
}

std::string format_sample_csv(const std::vector<double>& values) {
  std::string out;
  for (double v : values) {
    out += format_real(v);
    out += '\n';
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DomainError("cannot write output file '" + path.string() + "'");
    out << contents;
    out.flush();
    if (!out) {
      out.close();
      std::filesystem::remove(tmp);
      throw DomainError("failed writing output file '" + path.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw DomainError("cannot move output into place at '" + path.string() + "': " + ec.message());
  }
}

}  // namespace cauchy
