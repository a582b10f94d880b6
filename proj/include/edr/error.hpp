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

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace edr {

enum class ErrorKind {
    Domain,      // parameter outside its mathematical domain
    Shape,       // geometry / channel-count mismatch
    Parse,       // malformed or truncated input bytes
    Format,      // wrong magic or unsupported version
    Validation,  // well-formed bytes carrying out-of-range content
    Io,          // filesystem failure
};

const char* to_string(ErrorKind kind) noexcept;

/// Base of every error thrown by the library. Parse and validation errors
/// carry the byte offset (or record index) where the problem was detected.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message, std::optional<std::uint64_t> position = {});

    ErrorKind kind() const noexcept { return kind_; }
    std::optional<std::uint64_t> position() const noexcept { return position_; }
    /// The message without the kind prefix and position suffix.
    const std::string& message() const noexcept { return message_; }

private:
    ErrorKind kind_;
    std::string message_;
    std::optional<std::uint64_t> position_;
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& message) : Error(ErrorKind::Domain, message) {}
};

class ShapeError : public Error {
public:
    explicit ShapeError(const std::string& message) : Error(ErrorKind::Shape, message) {}
};

class ParseError : public Error {
public:
    ParseError(const std::string& message, std::uint64_t offset) : Error(ErrorKind::Parse, message, offset) {}
};

class FormatError : public Error {
public:
    FormatError(const std::string& message, std::uint64_t offset) : Error(ErrorKind::Format, message, offset) {}
};

class ValidationError : public Error {
public:
    ValidationError(const std::string& message, std::uint64_t offset) : Error(ErrorKind::Validation, message, offset) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& message) : Error(ErrorKind::Io, message) {}
};

}  // namespace edr
