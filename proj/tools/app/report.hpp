#pragma once

#include <filesystem>
#include <map>
#include <json.hpp>
#include <string>
#include <vector>

namespace qalab::app {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Every file name a command may write; removed from the output directory on failure.
const std::vector<std::string>& known_artifacts();
bool is_known_artifact(const std::string& name);

/// Output files held in memory until the whole command has succeeded.
class ArtifactSet {
 public:
  void add_json(const std::string& name, const Json& j);
  void add_text(const std::string& name, std::string content);
  const std::map<std::string, std::string>& files() const noexcept { return files_; }
  bool empty() const noexcept { return files_.empty(); }

 private:
  std::map<std::string, std::string> files_;
};

/// Writes all artifacts into `dir` (created if needed). Throws std::filesystem::filesystem_error.
void write_artifacts(const std::filesystem::path& dir, const ArtifactSet& set);

/// Removes known artifacts from `dir` and writes failure.json only.
void write_failure(const std::filesystem::path& dir, const std::string& command, int exit_code,
                   const std::string& kind, const std::string& message);

/// Comma-separated table with a header row; numbers use 12 significant digits.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  CsvTable& row();
  CsvTable& num(double v);
  CsvTable& integer(long long v);
  CsvTable& text(const std::string& s);
  std::string str() const;

 private:
  std::size_t columns_;
  std::string out_;
  std::size_t filled_ = 0;
};

std::string format_number(double v);

/// Non-finite doubles become null, which JSON cannot otherwise represent.
Json number_or_null(double v);

}  // namespace qalab::app
