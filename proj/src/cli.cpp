// SPDX-License-Identifier: Apache-2.0

#include "qae/cli.hpp"

#include "qae/matrix_market.hpp"
#include "qae/records.hpp"
#include "qae/reference.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

namespace qae
{

namespace
{

struct Halted
{
  std::string reason;
};

struct SolveOptions
{
  RunConfig rc;
  bool sub_size_given = false;
  bool check = false;
  std::string out_file;
  std::string checkpoint;
  std::size_t halt_after_steps = 0;
  std::size_t halt_after_pairs = 0;
  std::size_t jobs = 1;
};

void add_solver_options(CLI::App *cmd, SolveOptions &o)
{
  cmd->add_option("--qubits,-K", o.rc.qubits, "binary variables per vector element, sign included")
      ->check(CLI::Range(2, 53));
  cmd->add_option("--solver", o.rc.solver, "QUBO solver")
      ->check(CLI::IsMember({"tabu", "decomposed", "exact", "exact-decomposed"}));
  cmd->add_option_function<std::size_t>(
         "--sub-size",
         [&o](std::size_t v) {
           o.rc.sub_size = v;
           o.sub_size_given = true;
         },
         "subQUBO size for decomposed solvers (default 64, 16 for exact-decomposed)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--repeats", o.rc.repeats, "non-improving decomposer passes before stopping")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.rc.seed, "base seed");
  cmd->add_option("--mu-multiplier", o.rc.mu_multiplier, "deflation shift as a multiple of max |a_ij|")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-bisections", o.rc.max_bisections, "cap on lambda bisection steps")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", o.out_file, "also write records to this file");
}

void add_checkpoint_options(CLI::App *cmd, SolveOptions &o)
{
  cmd->add_flag("--check", o.check, "run the reference diagonalizer and report errors");
  cmd->add_option("--checkpoint", o.checkpoint, "checkpoint file; resumes when it exists");
  cmd->add_option("--halt-after-steps", o.halt_after_steps, "stop with exit code 4 after N lambda steps");
  cmd->add_option("--halt-after-pairs", o.halt_after_pairs, "stop with exit code 4 after N eigenpairs");
}

void resolve(SolveOptions &o)
{
  if (!o.sub_size_given && o.rc.solver == "exact-decomposed")
  {
    o.rc.sub_size = 16;
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void attach_reference(RunRecord &r, const SymmetricMatrix &a)
{
  const FullSpectrum ref = eigh_reference(a);
  std::vector<double> values(ref.values.begin(),
                             ref.values.begin() + static_cast<std::ptrdiff_t>(r.eigenpairs.size()));
  r.errors.clear();
  for (std::size_t k = 0; k < r.eigenpairs.size(); k++)
  {
    r.errors.push_back(r.eigenpairs[k].value - values[k]);
  }
  r.reference = std::move(values);
}

// Solve for the lowest n_states pairs, honouring checkpoint and halt options.
RunRecord run_spectrum(const std::string &command, const std::string &path, const SymmetricMatrix &a,
                       std::size_t n_states, const SolveOptions &o)
{
  const auto t0 = std::chrono::steady_clock::now();
  const QaeConfig cfg = make_qae_config(o.rc);
  const std::string digest = matrix_digest(a);

  SpectrumState resume;
  if (!o.checkpoint.empty() && std::filesystem::exists(o.checkpoint))
  {
    Checkpoint cp = read_checkpoint_file(o.checkpoint);
    if (cp.matrix_digest != digest || cp.config != o.rc || cp.n_states != n_states)
    {
      throw Error(ErrorCode::InvalidArgument, "checkpoint '" + o.checkpoint + "' belongs to a different run");
    }
    resume = std::move(cp.state);
  }

  std::size_t steps = 0;
  std::size_t pairs = 0;
  CheckpointHook hook;
  if (!o.checkpoint.empty())
  {
    hook = [&](const SpectrumState &st, CheckpointEvent ev) {
      write_checkpoint_file(o.checkpoint, Checkpoint{kRecordVersion, digest, o.rc, n_states, st});
      if (ev == CheckpointEvent::LambdaStep && o.halt_after_steps && ++steps >= o.halt_after_steps)
      {
        throw Halted{"halted after " + std::to_string(steps) + " lambda steps"};
      }
      if (ev == CheckpointEvent::Eigenpair && o.halt_after_pairs && ++pairs >= o.halt_after_pairs)
      {
        throw Halted{"halted after " + std::to_string(pairs) + " eigenpairs"};
      }
    };
  }

  RunRecord r;
  r.command = command;
  r.matrix_path = path;
  r.matrix_digest = digest;
  r.config = o.rc;
  r.seed = o.rc.seed;
  r.eigenpairs = spectrum(a, n_states, cfg, std::move(resume), hook);
  if (n_states > 1)
  {
    for (std::size_t k = 1; k < r.eigenpairs.size(); k++)
    {
      r.transitions.push_back(r.eigenpairs[k].value - r.eigenpairs[0].value);
    }
  }
  if (o.check)
  {
    attach_reference(r, a);
  }
  r.wall_time = seconds_since(t0);
  return r;
}

class RecordSink
{
public:
  RecordSink(std::ostream &out, const std::string &file) : out_(out)
  {
    if (!file.empty())
    {
      file_.open(file, std::ios::trunc);
      if (!file_)
      {
        throw Error(ErrorCode::InvalidArgument, "cannot open output file '" + file + "'");
      }
    }
  }

  void emit(const std::string &line)
  {
    out_ << line << '\n';
    if (file_.is_open())
    {
      file_ << line << '\n';
    }
  }

private:
  std::ostream &out_;
  std::ofstream file_;
};

void print_pairs_table(std::ostream &err, const RunRecord &r)
{
  err << std::setw(6) << "state" << std::setw(22) << "value" << std::setw(22) << "reference" << std::setw(14)
      << "error" << '\n';
  for (std::size_t k = 0; k < r.eigenpairs.size(); k++)
  {
    err << std::setw(6) << k << std::setw(22) << std::setprecision(12) << r.eigenpairs[k].value;
    if (r.reference)
    {
      err << std::setw(22) << (*r.reference)[k] << std::setw(14) << std::setprecision(4) << r.errors[k];
    }
    err << '\n';
  }
}

// Runs body(i) for i in [0, count) on up to `jobs` threads.
template <typename F>
void parallel_for(std::size_t count, std::size_t jobs, F body)
{
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs == 1)
  {
    for (std::size_t i = 0; i < count; i++)
    {
      body(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  for (std::size_t w = 0; w < jobs; w++)
  {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++)
      {
        body(i);
      }
    });
  }
  for (auto &t : workers)
  {
    t.join();
  }
}

int exit_code_for(const Error &e)
{
  switch (e.code())
  {
    case ErrorCode::InvalidArgument:
    case ErrorCode::NotSymmetric:
    case ErrorCode::ParseError:
    case ErrorCode::NotSymmetricHeader:
    case ErrorCode::IndexOutOfBounds:
      return kExitUsage;
    default:
      return kExitSolver;
  }
}

int cmd_solve(const std::string &path, std::size_t n_states, const std::string &command, SolveOptions o,
              std::ostream &out, std::ostream &err)
{
  resolve(o);
  const SymmetricMatrix a = load_matrix(path);
  if (n_states < 1 || n_states > a.dim())
  {
    err << "error: --states must be in [1, " << a.dim() << "]\n";
    return kExitUsage;
  }
  RecordSink sink(out, o.out_file);
  const RunRecord r = run_spectrum(command, path, a, n_states, o);
  sink.emit(serialize(r));
  print_pairs_table(err, r);
  return kExitOk;
}

int cmd_curve(const std::string &manifest, SolveOptions o, std::ostream &out, std::ostream &err)
{
  resolve(o);
  const auto rows = parse_manifest(manifest);
  std::vector<std::optional<RunRecord>> records(rows.size());
  std::vector<std::string> failures(rows.size());
  std::vector<int> codes(rows.size(), kExitOk);

  parallel_for(rows.size(), o.jobs, [&](std::size_t i) {
    SolveOptions row = o;
    row.rc.seed = mix_seed(o.rc.seed, i);
    row.check = true;
    row.checkpoint.clear();
    try
    {
      const SymmetricMatrix a = load_matrix(rows[i].path);
      RunRecord r = run_spectrum("curve", rows[i].path, a, 1, row);
      r.label = rows[i].label;
      records[i] = std::move(r);
    }
    catch (const Error &e)
    {
      failures[i] = e.what();
      codes[i] = exit_code_for(e);
    }
  });

  RecordSink sink(out, o.out_file);
  int code = kExitOk;
  err << std::left << std::setw(16) << "label" << std::right << std::setw(22) << "qae" << std::setw(22)
      << "reference" << std::setw(14) << "error" << '\n';
  for (std::size_t i = 0; i < rows.size(); i++)
  {
    err << std::left << std::setw(16) << rows[i].label << std::right;
    if (records[i])
    {
      const RunRecord &r = *records[i];
      sink.emit(serialize(r));
      err << std::setw(22) << std::setprecision(12) << r.eigenpairs[0].value << std::setw(22) << (*r.reference)[0]
          << std::setw(14) << std::setprecision(4) << r.errors[0] << '\n';
    }
    else
    {
      err << "  FAILED: " << failures[i] << '\n';
      code = std::max(code, codes[i]);
    }
  }
  return code;
}

int cmd_kscan(const std::string &path, int k_min, int k_max, SolveOptions o, std::ostream &out, std::ostream &err)
{
  resolve(o);
  if (k_min > k_max)
  {
    err << "error: --k-min must not exceed --k-max\n";
    return kExitUsage;
  }
  const SymmetricMatrix a = load_matrix(path);
  RecordSink sink(out, o.out_file);
  err << std::setw(4) << "K" << std::setw(22) << "value" << std::setw(14) << "error" << '\n';
  for (int k = k_min; k <= k_max; k++)
  {
    SolveOptions row = o;
    row.rc.qubits = k;
    row.check = true;
    row.checkpoint.clear();
    const RunRecord r = run_spectrum("kscan", path, a, 1, row);
    sink.emit(serialize(r));
    err << std::setw(4) << k << std::setw(22) << std::setprecision(12) << r.eigenpairs[0].value << std::setw(14)
        << std::setprecision(4) << r.errors[0] << '\n';
  }
  return kExitOk;
}

int cmd_stats(const std::string &path, std::size_t runs, SolveOptions o, std::ostream &out, std::ostream &err)
{
  resolve(o);
  if (runs < 1)
  {
    err << "error: --runs must be at least 1\n";
    return kExitUsage;
  }
  const SymmetricMatrix a = load_matrix(path);
  std::vector<RunRecord> records(runs);
  parallel_for(runs, o.jobs, [&](std::size_t i) {
    SolveOptions row = o;
    row.rc.seed = o.rc.seed + i;
    row.check = true;
    row.checkpoint.clear();
    records[i] = run_spectrum("stats", path, a, 1, row);
  });

  RecordSink sink(out, o.out_file);
  StatsSummary s;
  s.matrix_digest = matrix_digest(a);
  s.runs = runs;
  s.min = records[0].errors[0];
  s.max = records[0].errors[0];
  double sum = 0.0;
  for (const auto &r : records)
  {
    sink.emit(serialize(r));
    const double e = r.errors[0];
    sum += e;
    s.min = std::min(s.min, e);
    s.max = std::max(s.max, e);
  }
  s.mean = sum / static_cast<double>(runs);
  double var = 0.0;
  for (const auto &r : records)
  {
    var += (r.errors[0] - s.mean) * (r.errors[0] - s.mean);
  }
  s.stddev = std::sqrt(var / static_cast<double>(runs));
  sink.emit(serialize(s));
  err << "runs " << runs << "  mean error " << std::setprecision(6) << s.mean << "  stddev " << s.stddev
      << "  min " << s.min << "  max " << s.max << '\n';
  return kExitOk;
}

} // namespace

std::vector<ManifestRow> parse_manifest(const std::string &manifest_path)
{
  std::ifstream in(manifest_path);
  if (!in)
  {
    throw Error(ErrorCode::ParseError, "cannot open manifest '" + manifest_path + "'");
  }
  const auto base = std::filesystem::path(manifest_path).parent_path();
  std::vector<ManifestRow> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line))
  {
    lineno++;
    if (const auto hash = line.find('#'); hash != std::string::npos)
    {
      line.erase(hash);
    }
    std::istringstream fields(line);
    ManifestRow row;
    if (!(fields >> row.label))
    {
      continue;
    }
    std::getline(fields >> std::ws, row.path);
    while (!row.path.empty() && std::isspace(static_cast<unsigned char>(row.path.back())))
    {
      row.path.pop_back();
    }
    if (row.path.empty())
    {
      throw Error(ErrorCode::ParseError, "manifest line " + std::to_string(lineno) + " has no matrix path");
    }
    if (std::filesystem::path(row.path).is_relative())
    {
      row.path = (base / row.path).string();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Lowest eigenpairs of real symmetric matrices via QUBO minimization", "qae"};
  app.require_subcommand(1);

  std::string path;
  std::size_t states = 1;
  int k_min = 2, k_max = 14;
  std::size_t runs = 10;
  SolveOptions opts;

  auto *solve = app.add_subcommand("solve", "lowest eigenpair of a MatrixMarket matrix");
  solve->add_option("matrix", path, "MatrixMarket file")->required();
  add_solver_options(solve, opts);
  add_checkpoint_options(solve, opts);

  auto *spec = app.add_subcommand("spectrum", "lowest N eigenpairs by deflation");
  spec->add_option("matrix", path, "MatrixMarket file")->required();
  spec->add_option("--states,-N", states, "number of eigenpairs")->required();
  add_solver_options(spec, opts);
  add_checkpoint_options(spec, opts);

  auto *curve = app.add_subcommand("curve", "ground states for every matrix in a manifest");
  curve->add_option("manifest", path, "file of 'label path' lines")->required();
  curve->add_option("--jobs,-j", opts.jobs, "concurrent rows")->check(CLI::PositiveNumber);
  add_solver_options(curve, opts);

  auto *kscan = app.add_subcommand("kscan", "ground-state error versus qubits per element");
  kscan->add_option("matrix", path, "MatrixMarket file")->required();
  kscan->add_option("--k-min", k_min, "smallest K")->check(CLI::Range(2, 53));
  kscan->add_option("--k-max", k_max, "largest K")->check(CLI::Range(2, 53));
  add_solver_options(kscan, opts);

  auto *stats = app.add_subcommand("stats", "error statistics over seeded repetitions");
  stats->add_option("matrix", path, "MatrixMarket file")->required();
  stats->add_option("--runs,-R", runs, "number of seeds");
  stats->add_option("--jobs,-j", opts.jobs, "concurrent runs")->check(CLI::PositiveNumber);
  add_solver_options(stats, opts);

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.push_back("qae");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char *> argv;
  for (const auto &s : argv_storage)
  {
    argv.push_back(s.c_str());
  }

  try
  {
    app.parse(static_cast<int>(argv.size()), argv.data());
  }
  catch (const CLI::CallForHelp &)
  {
    out << app.help();
    return kExitOk;
  }
  catch (const CLI::ParseError &e)
  {
    if (e.get_exit_code() == 0)
    {
      out << e.what() << '\n';
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try
  {
    if (solve->parsed())
    {
      return cmd_solve(path, 1, "solve", opts, out, err);
    }
    if (spec->parsed())
    {
      return cmd_solve(path, states, "spectrum", opts, out, err);
    }
    if (curve->parsed())
    {
      return cmd_curve(path, opts, out, err);
    }
    if (kscan->parsed())
    {
      return cmd_kscan(path, k_min, k_max, opts, out, err);
    }
    if (stats->parsed())
    {
      return cmd_stats(path, runs, opts, out, err);
    }
  }
  catch (const Halted &h)
  {
    err << h.reason << "; checkpoint written to " << opts.checkpoint << '\n';
    return kExitHalted;
  }
  catch (const Error &e)
  {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  catch (const std::exception &e)
  {
    err << "error: " << e.what() << '\n';
    return kExitSolver;
  }
  return kExitUsage;
}

} // namespace qae
