// SPDX-License-Identifier: Apache-2.0
#include "staging.hpp"

#include <fstream>
#include <system_error>

#include "plcgrid/errors.hpp"

namespace fs = std::filesystem;

namespace plcgrid::cli {

StagedOutput::StagedOutput(fs::path destination) : destination_(std::move(destination)) {
  if (destination_.empty()) throw ParseError(0, "output directory is empty");
  staging_ = destination_.lexically_normal();
  if (!staging_.has_filename()) staging_ = staging_.parent_path();
  staging_ += ".staging";
  std::error_code ec;
  fs::remove_all(staging_, ec);
  fs::create_directories(staging_, ec);
  if (ec) throw ParseError(0, "cannot create '" + staging_.string() + "': " + ec.message());
}

StagedOutput::~StagedOutput() {
  std::error_code ec;
  fs::remove_all(staging_, ec);
}

void StagedOutput::write(const std::string& name, const std::string& contents) {
  std::ofstream out(staging_ / name, std::ios::binary | std::ios::trunc);
  out << contents;
  out.close();
  if (!out) throw ParseError(0, "cannot write '" + (staging_ / name).string() + "'");
  names_.push_back(name);
}

void StagedOutput::commit() {
  std::error_code ec;
  fs::create_directories(destination_, ec);
  if (ec) throw ParseError(0, "cannot create '" + destination_.string() + "': " + ec.message());
  for (const auto& name : names_) {
    fs::rename(staging_ / name, destination_ / name, ec);
    if (ec) throw ParseError(0, "cannot move output '" + name + "': " + ec.message());
  }
  committed_ = true;
}

}  // namespace plcgrid::cli
