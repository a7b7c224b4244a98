// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace plcgrid::cli {

/// Collects output files in a sibling staging directory and moves them into
/// the destination only on commit(), so a failed run leaves nothing behind.
class StagedOutput {
 public:
  explicit StagedOutput(std::filesystem::path destination);
  ~StagedOutput();
  StagedOutput(const StagedOutput&) = delete;
  StagedOutput& operator=(const StagedOutput&) = delete;

  void write(const std::string& name, const std::string& contents);
  const std::vector<std::string>& names() const noexcept { return names_; }
  void commit();

 private:
  std::filesystem::path destination_;
  std::filesystem::path staging_;
  std::vector<std::string> names_;
  bool committed_ = false;
};

}  // namespace plcgrid::cli
