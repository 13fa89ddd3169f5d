// Copyright 2026 The joinfer Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <vector>

namespace joinfer::detail {

// Minimal RFC 4180 reader: quoted fields, doubled quotes, CRLF or LF.
class CsvReader {
 public:
  CsvReader(std::istream& in, char delimiter) : in_(in), delimiter_(delimiter) {}

  // Reads the next record into `fields`. Returns false at end of input.
  bool next(std::vector<std::string>& fields);

  std::size_t line() const { return line_; }

 private:
  std::istream& in_;
  char delimiter_;
  std::size_t line_ = 0;
};

}  // namespace joinfer::detail
