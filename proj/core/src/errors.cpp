// SPDX-License-Identifier: Apache-2.0
#include "plcgrid/errors.hpp"

namespace plcgrid {

namespace {
std::string with_line(std::size_t line, const std::string& message) {
  if (line == 0) return message;
  return "line " + std::to_string(line) + ": " + message;
}
}  // namespace

ParseError::ParseError(std::size_t line, const std::string& message)
    : Error(with_line(line, message)), line_(line) {}

DisconnectedGraphError::DisconnectedGraphError(std::size_t components)
    : Error("graph is disconnected (" + std::to_string(components) +
            " components)"),
      components_(components) {}

}  // namespace plcgrid
