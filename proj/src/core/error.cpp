// Copyright 2026 The edrstream Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "edr/error.hpp"

namespace edr {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Domain: return "domain error";
        case ErrorKind::Shape: return "shape error";
        case ErrorKind::Parse: return "parse error";
        case ErrorKind::Format: return "format error";
        case ErrorKind::Validation: return "validation error";
        case ErrorKind::Io: return "I/O error";
    }
    return "error";
}

namespace {

std::string decorate(ErrorKind kind, const std::string& message, std::optional<std::uint64_t> position) {
    std::string out = to_string(kind);
    out += ": ";
    out += message;
    if (position) {
        out += " (at offset " + std::to_string(*position) + ")";
    }
    return out;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message, std::optional<std::uint64_t> position)
    : std::runtime_error(decorate(kind, message, position)), kind_(kind), message_(message), position_(position) {}

}  // namespace edr
