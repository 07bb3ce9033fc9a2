/*
 * Copyright 2026 The webspam authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace webspam {

/// Malformed input (URL, suffix table entry, corpus line, model file...).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Filesystem-level failure: missing or unreadable file.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Vector length does not match what a model or matrix expects.
class DimensionError : public std::runtime_error {
public:
    DimensionError(std::size_t expected, std::size_t actual)
        : std::runtime_error("dimension mismatch: expected " + std::to_string(expected) +
                             " values, got " + std::to_string(actual)),
          expected(expected),
          actual(actual) {}

    DimensionError(std::size_t expected, std::size_t actual, const std::string& detail)
        : std::runtime_error("dimension mismatch: expected " + std::to_string(expected) +
                             " values, got " + std::to_string(actual) + "; " + detail),
          expected(expected),
          actual(actual) {}

    std::size_t expected;
    std::size_t actual;
};

/// Training cannot proceed (single-class data, empty batch, bad config).
class TrainingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace webspam
