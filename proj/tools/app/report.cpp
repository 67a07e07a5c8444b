#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace qalab::app {

const std::vector<std::string>& known_artifacts() {
  static const std::vector<std::string> names{"decay.csv",    "verdict.json", "summary.json", "capacity.csv",
                                              "tau.csv",      "vstar.csv",    "graph.csv",    "vartheta.csv",
                                              "corpus.json",  "failure.json"};
  return names;
}

bool is_known_artifact(const std::string& name) {
  if (name.rfind("ufield_k", 0) == 0 && name.size() > 12 && name.substr(name.size() - 4) == ".csv") return true;
  const auto& k = known_artifacts();
  return std::find(k.begin(), k.end(), name) != k.end();
}

void ArtifactSet::add_json(const std::string& name, const Json& j) { files_[name] = j.dump(2) + "\n"; }

void ArtifactSet::add_text(const std::string& name, std::string content) { files_[name] = std::move(content); }

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::filesystem::filesystem_error("cannot open for writing", path, std::make_error_code(std::errc::io_error));
  out << content;
  if (!out) throw std::filesystem::filesystem_error("write failed", path, std::make_error_code(std::errc::io_error));
}

void remove_known(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) return;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    const std::string name = entry.path().filename().string();
    if (entry.is_regular_file() && is_known_artifact(name)) std::filesystem::remove(entry.path(), ec);
  }
}

}  // namespace

void write_artifacts(const std::filesystem::path& dir, const ArtifactSet& set) {
  std::filesystem::create_directories(dir);
  remove_known(dir);
  for (const auto& [name, content] : set.files()) write_file(dir / name, content);
}

void write_failure(const std::filesystem::path& dir, const std::string& command, int exit_code,
                   const std::string& kind, const std::string& message) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) return;
  remove_known(dir);
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["exit_code"] = exit_code;
  j["error"] = kind;
  j["message"] = message;
  try {
    write_file(dir / "failure.json", j.dump(2) + "\n");
  } catch (const std::exception&) {
    // the diagnostic already went to the error stream
  }
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

CsvTable::CsvTable(std::vector<std::string> header) : columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) out_ += (i ? "," : "") + header[i];
  out_ += "\n";
  filled_ = columns_;
}

CsvTable& CsvTable::row() {
  if (filled_ != columns_) throw std::logic_error("csv row has the wrong number of cells");
  if (!out_.empty() && out_.back() != '\n') out_ += "\n";
  filled_ = 0;
  return *this;
}

CsvTable& CsvTable::text(const std::string& s) {
  if (filled_ >= columns_) throw std::logic_error("csv row has too many cells");
  out_ += (filled_ ? "," : "") + s;
  ++filled_;
  return *this;
}

CsvTable& CsvTable::num(double v) { return text(format_number(v)); }

CsvTable& CsvTable::integer(long long v) { return text(std::to_string(v)); }

std::string CsvTable::str() const {
  if (filled_ != columns_) throw std::logic_error("csv row has the wrong number of cells");
  std::string s = out_;
  if (s.back() != '\n') s += "\n";
  return s;
}

}  // namespace qalab::app
