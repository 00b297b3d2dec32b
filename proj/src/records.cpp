// SPDX-License-Identifier: Apache-2.0

#include "qae/records.hpp"

#include "qae/decomposer.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace qae
{

using nlohmann::json;

namespace
{

json to_json(const RunConfig &c)
{
  return json{{"qubits", c.qubits},
              {"solver", c.solver},
              {"sub_size", c.sub_size},
              {"repeats", c.repeats},
              {"seed", c.seed},
              {"mu_multiplier", c.mu_multiplier},
              {"lambda_tolerance", c.lambda_tolerance},
              {"rq_tolerance", c.rq_tolerance},
              {"max_bisections", c.max_bisections}};
}

RunConfig config_from_json(const json &j)
{
  RunConfig c;
  c.qubits = j.at("qubits").get<int>();
  c.solver = j.at("solver").get<std::string>();
  c.sub_size = j.at("sub_size").get<std::size_t>();
  c.repeats = j.at("repeats").get<std::size_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.mu_multiplier = j.at("mu_multiplier").get<double>();
  c.lambda_tolerance = j.at("lambda_tolerance").get<double>();
  c.rq_tolerance = j.at("rq_tolerance").get<double>();
  c.max_bisections = j.at("max_bisections").get<int>();
  return c;
}

json to_json(const Eigenpair &p)
{
  return json{{"value", p.value},
              {"vector", p.vector},
              {"lambda", p.lambda_star},
              {"iterations", p.meta.iterations},
              {"evaluations", p.meta.evaluations},
              {"seed", p.meta.seed}};
}

Eigenpair pair_from_json(const json &j)
{
  Eigenpair p;
  p.value = j.at("value").get<double>();
  p.vector = j.at("vector").get<RealVector>();
  p.lambda_star = j.at("lambda").get<double>();
  p.meta.iterations = j.at("iterations").get<std::uint64_t>();
  p.meta.evaluations = j.at("evaluations").get<std::uint64_t>();
  p.meta.seed = j.at("seed").get<std::uint64_t>();
  return p;
}

std::string bits_to_string(const BitString &x)
{
  std::string s(x.size(), '0');
  for (std::size_t i = 0; i < x.size(); i++)
  {
    s[i] = x[i] ? '1' : '0';
  }
  return s;
}

BitString bits_from_string(const std::string &s)
{
  BitString x(s.size());
  for (std::size_t i = 0; i < s.size(); i++)
  {
    if (s[i] != '0' && s[i] != '1')
    {
      throw Error(ErrorCode::ParseError, "bit strings may only contain 0 and 1");
    }
    x[i] = s[i] == '1';
  }
  return x;
}

const char *phase_name(SearchPhase p)
{
  switch (p)
  {
    case SearchPhase::LowerEnd:
      return "lower_end";
    case SearchPhase::UpperEnd:
      return "upper_end";
    case SearchPhase::Bisection:
      return "bisection";
    case SearchPhase::Done:
      return "done";
  }
  return "done";
}

SearchPhase phase_from_name(const std::string &s)
{
  if (s == "lower_end")
    return SearchPhase::LowerEnd;
  if (s == "upper_end")
    return SearchPhase::UpperEnd;
  if (s == "bisection")
    return SearchPhase::Bisection;
  if (s == "done")
    return SearchPhase::Done;
  throw Error(ErrorCode::ParseError, "unknown search phase '" + s + "'");
}

json to_json(const LambdaSearchState &s)
{
  json history = json::array();
  for (const auto &h : s.history)
  {
    history.push_back(json{{"lambda", h.lambda}, {"bits", bits_to_string(h.bits)}, {"trivial", h.trivial},
                           {"rq", h.rq}});
  }
  return json{{"phase", phase_name(s.phase)},
              {"lo", s.lo},
              {"hi", s.hi},
              {"lo_doublings", s.lo_doublings},
              {"hi_doublings", s.hi_doublings},
              {"bisections", s.bisections},
              {"last_rq", s.last_rq ? json(*s.last_rq) : json(nullptr)},
              {"history", history}};
}

LambdaSearchState search_from_json(const json &j)
{
  LambdaSearchState s;
  s.phase = phase_from_name(j.at("phase").get<std::string>());
  s.lo = j.at("lo").get<double>();
  s.hi = j.at("hi").get<double>();
  s.lo_doublings = j.at("lo_doublings").get<int>();
  s.hi_doublings = j.at("hi_doublings").get<int>();
  s.bisections = j.at("bisections").get<int>();
  if (!j.at("last_rq").is_null())
  {
    s.last_rq = j.at("last_rq").get<double>();
  }
  for (const auto &h : j.at("history"))
  {
    LambdaStep step;
    step.lambda = h.at("lambda").get<double>();
    step.bits = bits_from_string(h.at("bits").get<std::string>());
    step.trivial = h.at("trivial").get<bool>();
    step.rq = h.at("rq").get<double>();
    s.history.push_back(std::move(step));
  }
  return s;
}

json to_json(const RunRecord &r)
{
  json pairs = json::array();
  for (const auto &p : r.eigenpairs)
  {
    pairs.push_back(to_json(p));
  }
  return json{{"version", r.version},
              {"command", r.command},
              {"label", r.label ? json(*r.label) : json(nullptr)},
              {"matrix_path", r.matrix_path},
              {"matrix_digest", r.matrix_digest},
              {"config", to_json(r.config)},
              {"eigenpairs", pairs},
              {"transitions", r.transitions},
              {"reference", r.reference ? json{{"values", *r.reference}} : json(nullptr)},
              {"errors", r.errors},
              {"wall_time", r.wall_time},
              {"seed", r.seed}};
}

template <typename F>
auto parse_or_throw(F &&f)
{
  try
  {
    return f();
  }
  catch (const json::exception &e)
  {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

} // namespace

QaeConfig make_qae_config(const RunConfig &rc)
{
  QaeConfig cfg;
  cfg.enc.qubits = rc.qubits;
  cfg.lambda_tolerance = rc.lambda_tolerance;
  cfg.rq_tolerance = rc.rq_tolerance;
  cfg.max_bisections = rc.max_bisections;
  cfg.mu_multiplier = rc.mu_multiplier;
  cfg.seed = rc.seed;
  if (rc.solver == "tabu")
  {
    cfg.solver = std::make_shared<TabuSampler>();
  }
  else if (rc.solver == "exact")
  {
    cfg.solver = std::make_shared<ExactSampler>();
  }
  else if (rc.solver == "decomposed")
  {
    cfg.solver = std::make_shared<DecomposingSampler>(std::make_shared<TabuSampler>(), rc.sub_size, rc.repeats);
  }
  else if (rc.solver == "exact-decomposed")
  {
    cfg.solver = std::make_shared<DecomposingSampler>(std::make_shared<ExactSampler>(), rc.sub_size, rc.repeats);
  }
  else
  {
    throw Error(ErrorCode::InvalidArgument, "unknown solver '" + rc.solver + "'");
  }
  cfg.validate();
  return cfg;
}

bool RunRecord::operator==(const RunRecord &other) const
{
  return serialize(*this) == serialize(other);
}

std::string serialize(const RunRecord &r)
{
  return to_json(r).dump();
}

std::string serialize_body(const RunRecord &r)
{
  RunRecord copy = r;
  copy.wall_time = 0.0;
  return serialize(copy);
}

RunRecord parse_run_record(const std::string &line)
{
  return parse_or_throw([&] {
    const json j = json::parse(line);
    RunRecord r;
    r.version = j.at("version").get<int>();
    if (r.version != kRecordVersion)
    {
      throw Error(ErrorCode::ParseError, "unsupported record version " + std::to_string(r.version));
    }
    r.command = j.at("command").get<std::string>();
    if (!j.at("label").is_null())
    {
      r.label = j.at("label").get<std::string>();
    }
    r.matrix_path = j.at("matrix_path").get<std::string>();
    r.matrix_digest = j.at("matrix_digest").get<std::string>();
    r.config = config_from_json(j.at("config"));
    for (const auto &p : j.at("eigenpairs"))
    {
      r.eigenpairs.push_back(pair_from_json(p));
    }
    r.transitions = j.at("transitions").get<std::vector<double>>();
    if (!j.at("reference").is_null())
    {
      r.reference = j.at("reference").at("values").get<std::vector<double>>();
    }
    r.errors = j.at("errors").get<std::vector<double>>();
    r.wall_time = j.at("wall_time").get<double>();
    r.seed = j.at("seed").get<std::uint64_t>();
    return r;
  });
}

std::string serialize(const StatsSummary &s)
{
  return json{{"version", s.version}, {"command", "stats-summary"}, {"matrix_digest", s.matrix_digest},
              {"runs", s.runs},       {"mean", s.mean},              {"stddev", s.stddev},
              {"min", s.min},         {"max", s.max}}
      .dump();
}

std::string serialize(const Checkpoint &c)
{
  json pairs = json::array();
  for (const auto &p : c.state.pairs)
  {
    pairs.push_back(to_json(p));
  }
  json current = nullptr;
  if (c.state.current)
  {
    const auto entries = c.state.current->entries();
    current = json{{"n", c.state.current->dim()}, {"entries", std::vector<double>(entries.begin(), entries.end())}};
  }
  return json{{"version", c.version},
              {"matrix_digest", c.matrix_digest},
              {"config", to_json(c.config)},
              {"n_states", c.n_states},
              {"pairs", pairs},
              {"current", current},
              {"search", c.state.search ? to_json(*c.state.search) : json(nullptr)}}
      .dump();
}

Checkpoint parse_checkpoint(const std::string &text)
{
  return parse_or_throw([&] {
    const json j = json::parse(text);
    Checkpoint c;
    c.version = j.at("version").get<int>();
    if (c.version != kRecordVersion)
    {
      throw Error(ErrorCode::ParseError, "unsupported checkpoint version " + std::to_string(c.version));
    }
    c.matrix_digest = j.at("matrix_digest").get<std::string>();
    c.config = config_from_json(j.at("config"));
    c.n_states = j.at("n_states").get<std::size_t>();
    for (const auto &p : j.at("pairs"))
    {
      c.state.pairs.push_back(pair_from_json(p));
    }
    if (!j.at("current").is_null())
    {
      c.state.current = SymmetricMatrix(j.at("current").at("n").get<std::size_t>(),
                                        j.at("current").at("entries").get<std::vector<double>>());
    }
    if (!j.at("search").is_null())
    {
      c.state.search = search_from_json(j.at("search"));
    }
    return c;
  });
}

void write_checkpoint_file(const std::string &path, const Checkpoint &c)
{
  // Replace atomically: readers see the old or the new checkpoint, never a partial one.
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out)
    {
      throw Error(ErrorCode::ParseError, "cannot write checkpoint '" + tmp + "'");
    }
    out << serialize(c) << '\n';
  }
  std::filesystem::rename(tmp, path);
}

Checkpoint read_checkpoint_file(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw Error(ErrorCode::ParseError, "cannot read checkpoint '" + path + "'");
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_checkpoint(ss.str());
}

} // namespace qae
