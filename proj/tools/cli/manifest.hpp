// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace plcgrid::cli {

std::string sha256_hex(std::string_view data);
std::string read_file(const std::filesystem::path& path);

/// Key-value record of a run. Holds no timestamps or absolute output
/// locations so that reruns reproduce it byte for byte.
class Manifest {
 public:
  explicit Manifest(std::string command);

  /// Records the file name (not the directory, so reruns elsewhere match) and
  /// content hash of an input file.
  void add_input(const std::string& role, const std::filesystem::path& path,
                 const std::string& contents);
  void add_option(const std::string& name, const std::string& value);
  void set_seed(std::uint64_t seed) { seed_ = seed; }
  void add_output(const std::string& name) { outputs_.push_back(name); }

  /// SHA-256 over the command, input contents and options.
  std::string config_digest() const;
  std::string str() const;

 private:
  struct Input {
    std::string role;
    std::string path;
    std::string digest;
  };
  std::string command_;
  std::vector<Input> inputs_;
  std::vector<std::pair<std::string, std::string>> options_;
  std::optional<std::uint64_t> seed_;
  std::vector<std::string> outputs_;
};

}  // namespace plcgrid::cli
