// Copyright prufer contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "prufer/prufer.h"

#include <cmath>
#include <deque>
#include <iostream>

#include "prufer/experiments.hpp"
#include "prufer/oscillatory.hpp"

struct prufer_config
{
  prufer::ExperimentConfig cfg;
};

struct prufer_table
{
  prufer::Table table;
  std::deque<std::string> text;  // stable storage for prufer_table_text
};

namespace
{

thread_local std::string last_error;
thread_local std::string last_kind;

prufer_status status_of(prufer::Errc code)
{
  using prufer::Errc;
  switch (code)
  {
    case Errc::contract_violation:
    case Errc::branch_violation:
      return PRUFER_ERR_NUMERICAL;
    case Errc::io:
      return PRUFER_ERR_IO;
    default:
      return PRUFER_ERR_VALIDATION;
  }
}

prufer_status record(prufer_status s, const char *kind, const std::string &msg)
{
  last_kind = kind;
  last_error = msg;
  return s;
}

template <typename F>
prufer_status guarded(F &&fn)
{
  try
  {
    last_error.clear();
    last_kind.clear();
    return fn();
  }
  catch (const prufer::Error &e)
  {
    return record(status_of(e.code()), prufer::to_string(e.code()), e.what());
  }
  catch (const std::bad_alloc &)
  {
    return record(PRUFER_ERR_INTERNAL, "internal", "out of memory");
  }
  catch (const std::exception &e)
  {
    return record(PRUFER_ERR_INTERNAL, "internal", e.what());
  }
}

prufer_status null_argument(const char *what)
{
  return record(PRUFER_ERR_ARGUMENT, "argument", std::string(what) + " must not be null");
}

prufer::PeriodicJacobi jacobi_of(const double *a, const double *b, size_t q)
{
  return {std::vector<double>(a, a + q), std::vector<double>(b, b + q)};
}

}  // namespace

extern "C" {

const char *prufer_version(void) { return "0.1.0"; }
const char *prufer_last_error(void) { return last_error.c_str(); }
const char *prufer_last_error_kind(void) { return last_kind.c_str(); }

prufer_status prufer_config_parse(const char *json, prufer_config **out)
{
  if (!json || !out)
    return null_argument("json and out");
  *out = nullptr;
  return guarded([&] {
    *out = new prufer_config{prufer::parse_config(json)};
    return PRUFER_OK;
  });
}

prufer_status prufer_config_load(const char *path, prufer_config **out)
{
  if (!path || !out)
    return null_argument("path and out");
  *out = nullptr;
  return guarded([&] {
    *out = new prufer_config{prufer::load_config(path)};
    return PRUFER_OK;
  });
}

void prufer_config_free(prufer_config *config) { delete config; }

prufer_status prufer_config_set_seed(prufer_config *config, uint64_t seed)
{
  if (!config)
    return null_argument("config");
  config->cfg.seed = seed;
  return PRUFER_OK;
}

const char *prufer_config_output(const prufer_config *config)
{
  return config ? config->cfg.output.c_str() : "";
}

const char *prufer_config_format(const prufer_config *config)
{
  return config ? config->cfg.format.c_str() : "";
}

prufer_status prufer_run(const prufer_config *config, const char *command, int threads,
                         prufer_table **out)
{
  if (!config || !command || !out)
    return null_argument("config, command and out");
  *out = nullptr;
  return guarded([&] {
    auto r = prufer::run_experiment(config->cfg, command, threads);
    *out = new prufer_table{std::move(r.table), {}};
    if (r.status == 0)
      return PRUFER_OK;
    return record(r.status == 2 ? PRUFER_ERR_VALIDATION : PRUFER_ERR_NUMERICAL,
                  r.status == 2 ? "validation" : "contract_violation", r.message);
  });
}

size_t prufer_table_rows(const prufer_table *table) { return table ? table->table.rows.size() : 0; }

size_t prufer_table_columns(const prufer_table *table)
{
  return table ? table->table.columns.size() : 0;
}

const char *prufer_table_column_name(const prufer_table *table, size_t column)
{
  if (!table || column >= table->table.columns.size())
    return nullptr;
  return table->table.columns[column].c_str();
}

prufer_status prufer_table_number(const prufer_table *table, size_t row, size_t column, double *out)
{
  if (!table || !out)
    return null_argument("table and out");
  if (row >= table->table.rows.size() || column >= table->table.columns.size())
    return record(PRUFER_ERR_ARGUMENT, "argument", "cell index out of range");
  const auto &cell = table->table.rows[row][column];
  if (const auto *d = std::get_if<double>(&cell))
    *out = *d;
  else if (const auto *i = std::get_if<std::int64_t>(&cell))
    *out = static_cast<double>(*i);
  else
    return record(PRUFER_ERR_ARGUMENT, "argument", "cell holds text");
  return PRUFER_OK;
}

const char *prufer_table_text(const prufer_table *table, size_t row, size_t column)
{
  if (!table || row >= table->table.rows.size() || column >= table->table.columns.size())
    return nullptr;
  auto *t = const_cast<prufer_table *>(table);
  const auto &cell = table->table.rows[row][column];
  if (const auto *d = std::get_if<double>(&cell))
    t->text.push_back(prufer::format_double(*d));
  else if (const auto *i = std::get_if<std::int64_t>(&cell))
    t->text.push_back(std::to_string(*i));
  else
    t->text.push_back(std::get<std::string>(cell));
  return t->text.back().c_str();
}

prufer_status prufer_table_write(const prufer_table *table, const char *path, const char *format)
{
  if (!table)
    return null_argument("table");
  return guarded([&] {
    prufer::Format f;
    try
    {
      f = prufer::format_from_string(format ? format : "csv");
    }
    catch (const prufer::Error &e)
    {
      return record(PRUFER_ERR_ARGUMENT, "argument", e.what());
    }
    if (!path || std::string(path) == "-")
    {
      prufer::write_table(std::cout, table->table, f);
      std::cout.flush();
      if (!std::cout)
        prufer::fail(prufer::Errc::io, "cannot write to standard output");
    }
    else
      prufer::write_table(std::string(path), table->table, f);
    return PRUFER_OK;
  });
}

void prufer_table_free(prufer_table *table) { delete table; }

prufer_status prufer_jacobi_discriminant(const double *a, const double *b, size_t q, double energy,
                                         double *out)
{
  if (!a || !b || !out)
    return null_argument("a, b and out");
  return guarded([&] {
    *out = prufer::discriminant(jacobi_of(a, b, q), energy);
    return PRUFER_OK;
  });
}

prufer_status prufer_jacobi_floquet(const double *a, const double *b, size_t q, double energy,
                                    double *k, double *omega, double *phi_e)
{
  if (!a || !b || !k || !omega || !phi_e)
    return null_argument("a, b, k, omega and phi_e");
  return guarded([&] {
    const auto f = prufer::floquet_solution(jacobi_of(a, b, q), energy);
    *k = f.k;
    *omega = f.omega;
    *phi_e = f.phi_E;
    return PRUFER_OK;
  });
}

prufer_status prufer_lambda_kappa(const double *f_re, const double *f_im, size_t q, double kappa,
                                  double *g_re, double *g_im)
{
  if (!f_re || !f_im || !g_re || !g_im)
    return null_argument("f_re, f_im, g_re and g_im");
  return guarded([&] {
    std::vector<prufer::cplx> f;
    for (size_t j = 0; j < q; ++j)
      f.emplace_back(f_re[j], f_im[j]);
    const auto g = prufer::lambda_kappa(prufer::PeriodicSequence(std::move(f)), kappa);
    for (size_t j = 0; j < q; ++j)
    {
      g_re[j] = g.values[j].real();
      g_im[j] = g.values[j].imag();
    }
    return PRUFER_OK;
  });
}

prufer_status prufer_dfly_residual(double even_re, double even_im, double odd_re, double odd_im,
                                   double theta, double *out)
{
  if (!out)
    return null_argument("out");
  return guarded([&] {
    *out = prufer::dfly_residual({even_re, even_im}, {odd_re, odd_im}, std::polar(1.0, theta));
    return PRUFER_OK;
  });
}

}  // extern "C"
