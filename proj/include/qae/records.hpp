// SPDX-License-Identifier: Apache-2.0
//
// Serialized forms: one JSON object per line for run records, a single JSON
// document for checkpoints. Doubles are written in shortest round-trip form,
// so parse(serialize(r)) == r exactly.

#ifndef QAE_RECORDS_HPP
#define QAE_RECORDS_HPP

#include "qae/eigensolver.hpp"

#include <optional>
#include <string>

namespace qae
{

inline constexpr int kRecordVersion = 1;

struct RunConfig
{
  int qubits = 10;
  std::string solver = "decomposed"; // tabu | decomposed | exact | exact-decomposed
  std::size_t sub_size = 64;
  std::size_t repeats = 50;
  std::uint64_t seed = 0;
  double mu_multiplier = 16.0;
  double lambda_tolerance = 1e-6;
  double rq_tolerance = 1e-8;
  int max_bisections = 60;

  bool operator==(const RunConfig &) const = default;
};

// Sampler and eigensolver configuration described by a RunConfig.
QaeConfig make_qae_config(const RunConfig &rc);

struct RunRecord
{
  int version = kRecordVersion;
  std::string command;
  std::optional<std::string> label;
  std::string matrix_path;
  std::string matrix_digest;
  RunConfig config;
  std::vector<Eigenpair> eigenpairs;
  std::vector<double> transitions;             // value_k - value_0
  std::optional<std::vector<double>> reference; // lowest reference eigenvalues
  std::vector<double> errors;                  // eigenpairs[k].value - reference[k]
  double wall_time = 0.0;
  std::uint64_t seed = 0;

  bool operator==(const RunRecord &) const;
};

std::string serialize(const RunRecord &r);
// The record with wall_time forced to zero; for reproducibility comparisons.
std::string serialize_body(const RunRecord &r);
RunRecord parse_run_record(const std::string &line);

struct StatsSummary
{
  int version = kRecordVersion;
  std::string matrix_digest;
  std::size_t runs = 0;
  double mean = 0.0;
  double stddev = 0.0;
  double min = 0.0;
  double max = 0.0;
};

std::string serialize(const StatsSummary &s);

struct Checkpoint
{
  int version = kRecordVersion;
  std::string matrix_digest;
  RunConfig config;
  std::size_t n_states = 1;
  SpectrumState state;
};

std::string serialize(const Checkpoint &c);
Checkpoint parse_checkpoint(const std::string &text);

void write_checkpoint_file(const std::string &path, const Checkpoint &c);
Checkpoint read_checkpoint_file(const std::string &path);

} // namespace qae

#endif
