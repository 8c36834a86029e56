// Copyright prufer contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace prufer
{

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table
{
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  explicit Table(std::vector<std::string> columns = {}) : columns(std::move(columns)) {}
  void add(std::vector<Cell> row);
  std::size_t column(const std::string &name) const;
  double number(std::size_t row, const std::string &name) const;

  bool operator==(const Table &) const = default;
};

enum class Format
{
  csv,
  jsonl
};

Format format_from_string(const std::string &s);

// Doubles print with 17 significant digits; non-finite values as nan / inf / -inf.
std::string format_double(double x);

void write_csv(std::ostream &os, const Table &t);
void write_jsonl(std::ostream &os, const Table &t);
void write_table(std::ostream &os, const Table &t, Format f);
void write_table(const std::string &path, const Table &t, Format f);

// Rows as objects keyed by column; columns are taken from the first line.
Table read_jsonl(std::istream &is);

}  // namespace prufer
