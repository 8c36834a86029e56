// Copyright prufer contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "prufer/table.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "prufer/error.hpp"

namespace prufer
{

using nlohmann::ordered_json;

namespace
{

std::string csv_field(const std::string &s)
{
  if (s.find_first_of(",\"\r\n") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char c : s)
  {
    if (c == '"')
      out += '"';
    out += c;
  }
  return out + "\"";
}

std::string cell_text(const Cell &c)
{
  if (std::holds_alternative<std::int64_t>(c))
    return std::to_string(std::get<std::int64_t>(c));
  if (std::holds_alternative<double>(c))
    return format_double(std::get<double>(c));
  return std::get<std::string>(c);
}

ordered_json cell_json(const Cell &c)
{
  if (std::holds_alternative<std::int64_t>(c))
    return std::get<std::int64_t>(c);
  if (std::holds_alternative<double>(c))
  {
    const double x = std::get<double>(c);
    // JSON has no non-finite numbers; these travel as strings.
    if (!std::isfinite(x))
      return format_double(x);
    return x;
  }
  return std::get<std::string>(c);
}

Cell json_cell(const ordered_json &j)
{
  if (j.is_number_integer())
    return j.get<std::int64_t>();
  if (j.is_number())
    return j.get<double>();
  if (j.is_string())
  {
    const auto s = j.get<std::string>();
    if (s == "nan")
      return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf")
      return std::numeric_limits<double>::infinity();
    if (s == "-inf")
      return -std::numeric_limits<double>::infinity();
    return s;
  }
  if (j.is_boolean())
    return std::int64_t{j.get<bool>() ? 1 : 0};
  fail(Errc::io, "unsupported JSON value in table row");
}

}  // namespace

void Table::add(std::vector<Cell> row)
{
  if (row.size() != columns.size())
    fail(Errc::invalid_spec, "table row has " + std::to_string(row.size()) + " cells, expected " +
                                 std::to_string(columns.size()));
  rows.push_back(std::move(row));
}

std::size_t Table::column(const std::string &name) const
{
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name)
      return i;
  fail(Errc::out_of_range, "no column \"" + name + "\"");
}

double Table::number(std::size_t row, const std::string &name) const
{
  const Cell &c = rows.at(row).at(column(name));
  if (std::holds_alternative<double>(c))
    return std::get<double>(c);
  if (std::holds_alternative<std::int64_t>(c))
    return static_cast<double>(std::get<std::int64_t>(c));
  fail(Errc::invalid_spec, "column \"" + name + "\" is not numeric");
}

Format format_from_string(const std::string &s)
{
  if (s == "csv")
    return Format::csv;
  if (s == "jsonl")
    return Format::jsonl;
  fail(Errc::invalid_spec, "unknown output format \"" + s + "\" (csv or jsonl)");
}

std::string format_double(double x)
{
  if (std::isnan(x))
    return "nan";
  if (std::isinf(x))
    return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(std::ostream &os, const Table &t)
{
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    os << (i ? "," : "") << csv_field(t.columns[i]);
  os << "\r\n";
  for (const auto &row : t.rows)
  {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << csv_field(cell_text(row[i]));
    os << "\r\n";
  }
}

void write_jsonl(std::ostream &os, const Table &t)
{
  for (const auto &row : t.rows)
  {
    ordered_json j = ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i)
      j[t.columns[i]] = cell_json(row[i]);
    os << j.dump() << '\n';
  }
}

void write_table(std::ostream &os, const Table &t, Format f)
{
  if (f == Format::csv)
    write_csv(os, t);
  else
    write_jsonl(os, t);
}

void write_table(const std::string &path, const Table &t, Format f)
{
  std::ofstream os(path, std::ios::binary);
  if (!os)
    fail(Errc::io, "cannot open " + path + " for writing");
  write_table(os, t, f);
  os.flush();
  if (!os)
    fail(Errc::io, "write to " + path + " failed");
}

Table read_jsonl(std::istream &is)
{
  Table t;
  std::string line;
  bool first = true;
  while (std::getline(is, line))
  {
    if (line.empty())
      continue;
    ordered_json j;
    try
    {
      j = ordered_json::parse(line);
    }
    catch (const std::exception &e)
    {
      fail(Errc::io, std::string("malformed JSON line: ") + e.what());
    }
    if (!j.is_object())
      fail(Errc::io, "JSON line is not an object");
    if (first)
    {
      for (auto it = j.begin(); it != j.end(); ++it)
        t.columns.push_back(it.key());
      first = false;
    }
    std::vector<Cell> row;
    for (const auto &c : t.columns)
    {
      if (!j.contains(c))
        fail(Errc::io, "JSON line lacks column \"" + c + "\"");
      row.push_back(json_cell(j.at(c)));
    }
    t.add(std::move(row));
  }
  return t;
}

}  // namespace prufer
