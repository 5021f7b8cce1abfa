#pragma once

// CSV emission of cover records.
//
// Header: orbifold_id,p,root,n,index,volume,b1,log_torsion,tr,transitive,error
// Reals use 12 significant digits with trailing zeros dropped ("%.12g" in
// the C locale), lines end in LF. Rows with an error leave the numeric
// result columns empty.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "torsion_tower/tr_stats.hpp"

namespace torsion_tower {

inline constexpr std::string_view kCsvHeader = "orbifold_id,p,root,n,index,volume,b1,log_torsion,tr,transitive,error";

inline std::string format_real(double v) {
  if (v == 0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// Writes to a sibling temporary file and renames it over the target, so an
/// interrupted run never leaves a partial file behind.
inline void write_file_atomically(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::IoError, "cannot rename into " + path);
  }
}

inline void write_csv(std::ostream& out, const std::vector<CoverRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.orbifold_id << ',' << r.p << ',' << r.root << ',' << r.n << ',';
    if (r.ok()) {
      out << r.index << ',' << format_real(r.volume) << ',' << r.b1 << ',' << format_real(r.log_torsion) << ','
          << format_real(r.tr) << ',' << (r.transitive ? "true" : "false") << ',';
    } else {
      out << ",,,,,,";
    }
    out << r.error << '\n';
  }
}

inline std::string to_csv(const std::vector<CoverRecord>& records) {
  std::ostringstream out;
  write_csv(out, records);
  return out.str();
}

inline void emit_csv(const std::vector<CoverRecord>& records, const std::string& path) {
  write_file_atomically(path, to_csv(records));
}

inline std::vector<CoverRecord> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw Error(ErrorCode::ParseError, "missing or unexpected CSV header");
  std::vector<CoverRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    if (f.size() != 11) throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected 11 fields");
    try {
      CoverRecord r;
      r.orbifold_id = f[0];
      r.p = std::stoull(f[1]);
      r.root = std::stoull(f[2]);
      r.n = static_cast<unsigned>(std::stoul(f[3]));
      r.error = f[10];
      if (r.ok()) {
        r.index = std::stoull(f[4]);
        r.volume = std::stod(f[5]);
        r.b1 = std::stoull(f[6]);
        r.log_torsion = std::stod(f[7]);
        r.tr = std::stod(f[8]);
        r.transitive = f[9] == "true";
      }
      records.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": malformed number");
    }
  }
  return records;
}

}  // namespace torsion_tower
