#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tensorsq.hpp"

namespace {

using namespace tensorsq;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitVerifyFailed = 2;

struct Common {
  std::string format = "json";
  std::uint64_t max_cosets = kDefaultMaxCosets;
  std::size_t cap = kDefaultTableCap;
  std::string cache_dir;
  unsigned jobs = 1;
};

std::string slurp(std::string const& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A spec string, or @path to a .cay (Cayley table) or .fp (presentation).
GroupTable load_group(std::string const& arg, Common const& c) {
  if (arg.empty() || arg[0] != '@') {
    return parse_group_spec(arg, c.cap);
  }
  std::filesystem::path const path = arg.substr(1);
  if (path.extension() == ".cay") {
    std::ifstream in(path);
    if (!in) {
      throw std::runtime_error("cannot open " + path.string());
    }
    GroupTable g = read_cayley(in);
    if (g.order() > c.cap) {
      throw SizeLimit(g.order(), c.cap);
    }
    return g;
  }
  if (path.extension() == ".fp") {
    return table_from_presentation(parse_presentation(slurp(path)),
                                   c.max_cosets, c.cap);
  }
  throw std::runtime_error("unknown input extension '" +
                           path.extension().string() + "', expected .cay or .fp");
}

std::optional<RecordCache> open_cache(Common const& c) {
  std::string dir = c.cache_dir;
  if (char const* env = std::getenv("TENSORSQ_CACHE"); env && *env) {
    dir = env;
  }
  if (dir.empty()) {
    return std::nullopt;
  }
  return RecordCache(dir);
}

std::string join(std::vector<std::uint64_t> const& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out += (i ? "," : "") + std::to_string(v[i]);
  }
  return out;
}

template <class T>
std::string cell(std::optional<T> const& v) {
  return v ? std::to_string(*v) : "-";
}

void print_record_tsv(ComputationRecord const& r, bool schur) {
  std::cout << "spec\torder\tp\tn\tm\ttensor_order\tinvariants";
  std::cout << (schur ? "\texterior_order\tnabla_order\tmultiplier_order\tmultiplier"
                      : "\tnabla_order\tj2_order\tmultiplier_order\tkappa_image_order");
  std::cout << "\tstatus\n";
  std::cout << r.spec << '\t' << r.order << '\t' << cell(r.p) << '\t' << cell(r.n)
            << '\t' << cell(r.m);
  if (r.tensor) {
    TensorSummary const& t = *r.tensor;
    std::cout << '\t' << t.order << '\t'
              << (t.invariants ? join(t.invariants->factors()) : "non-abelian");
    if (schur) {
      std::cout << '\t' << t.exterior_order << '\t' << t.nabla_order << '\t'
                << t.multiplier_order << '\t' << t.multiplier.name();
    } else {
      std::cout << '\t' << t.nabla_order << '\t' << t.j2_order << '\t'
                << t.multiplier_order << '\t' << t.kappa_image_order;
    }
  } else {
    std::cout << "\t-\t-\t-\t-\t-\t-";
  }
  std::cout << '\t' << r.status << '\n';
}

int cmd_tensor(std::string const& input, Common const& c, bool schur) {
  GroupTable const g = load_group(input, c);
  auto cache = open_cache(c);
  std::string key;
  std::optional<ComputationRecord> rec;
  if (cache) {
    key = table_hash(g);
    rec = cache->load(key, input);
    if (rec) {
      std::cerr << "cache hit " << key << '\n';
    }
  }
  if (!rec) {
    rec = compute_record(input, g, c.max_cosets, c.cap);
    if (cache && rec->status == status::ok) {
      cache->store(key, *rec);
    }
  }
  if (c.format == "tsv") {
    print_record_tsv(*rec, schur);
  } else {
    std::cout << to_json(*rec).dump(2) << '\n';
  }
  if (rec->status != status::ok) {
    std::cerr << rec->reason << '\n';
    return kExitError;
  }
  return kExitOk;
}

int cmd_verify(Selector const& sel, Common const& c, bool timing) {
  Guards guards;
  guards.max_cosets = c.max_cosets;
  guards.cap = c.cap;
  guards.jobs = c.jobs;
  guards.timing = timing;
  SuiteResult const res = run_suite(sel, guards);
  if (c.format == "tsv") {
    std::cout << "spec\tstatus\tcheck\tverdict\tdetail\n";
    for (auto const& g : res.groups) {
      if (g.checks.empty()) {
        std::cout << g.spec << '\t' << g.status << "\t-\t-\t" << g.reason << '\n';
      }
      for (auto const& ch : g.checks) {
        std::cout << g.spec << '\t' << g.status << '\t' << ch.name << '\t'
                  << ch.verdict << '\t' << ch.detail << '\n';
      }
    }
  } else {
    std::cout << to_json(res).dump(2) << '\n';
  }
  std::cerr << res.groups.size() << " groups: " << res.count_status(status::ok)
            << " ok, " << res.count_status(status::fail) << " failed, "
            << res.count_status(status::error) << " errors, "
            << res.count_status(status::skipped_by_cap) << " skipped-by-cap\n";
  return res.has_failures() ? kExitVerifyFailed : kExitOk;
}

int cmd_catalog(Common const& c) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  if (c.format == "tsv") {
    std::cout << "spec\torder\tp\tn\tm\ttier\tnote\n";
  }
  for (CatalogEntry const& e : builtin_catalog()) {
    GroupSpec const spec = parse_spec(e.spec);
    std::optional<std::uint64_t> p, n, m;
    if (auto pp = prime_power(spec.order())) {
      p = pp->p;
      n = pp->e;
      if (spec.order() <= c.cap) {
        m = log_p(pp->p, derived_subgroup(build_group(spec, c.cap)).order());
      }
    }
    char const* tier = e.tier == Tier::ci      ? "ci"
                       : e.tier == Tier::probe ? "probe"
                                               : "extended";
    if (c.format == "tsv") {
      std::cout << e.spec << '\t' << spec.order() << '\t' << cell(p) << '\t'
                << cell(n) << '\t' << cell(m) << '\t' << tier << '\t' << e.note
                << '\n';
    } else {
      auto opt = [](std::optional<std::uint64_t> v) {
        return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
      };
      out.push_back({{"spec", e.spec},
                     {"order", spec.order()},
                     {"p", opt(p)},
                     {"n", opt(n)},
                     {"m", opt(m)},
                     {"tier", tier},
                     {"note", e.note}});
    }
  }
  if (c.format != "tsv") {
    std::cout << out.dump(2) << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-abelian tensor squares of finite groups"};
  app.require_subcommand(1);
  Common common;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", common.format, "Output format")
        ->check(CLI::IsMember({"json", "tsv"}));
    sub->add_option("--max-cosets", common.max_cosets, "Coset enumeration budget")
        ->check(CLI::PositiveNumber);
    sub->add_option("--cap", common.cap, "Largest explicit table order")
        ->check(CLI::PositiveNumber);
    sub->add_option("--cache-dir", common.cache_dir,
                    "Result cache directory (TENSORSQ_CACHE overrides)");
    sub->add_option("--jobs", common.jobs, "Concurrent groups in verify")
        ->check(CLI::PositiveNumber);
  };

  std::string input;
  auto* tensor = app.add_subcommand("tensor", "Tensor square of one group");
  tensor->add_option("group", input, "Group spec or @file.cay / @file.fp")->required();
  add_common(tensor);

  auto* schur = app.add_subcommand("schur", "Schur multiplier of one group");
  schur->add_option("group", input, "Group spec or @file.cay / @file.fp")->required();
  add_common(schur);

  Selector sel;
  bool no_timing = false;
  auto* verify = app.add_subcommand("verify", "Run the verification suite");
  verify->add_option("specs", sel.specs, "Explicit group specs instead of the catalog");
  verify->add_option("--p", sel.primes, "Primes to select")->delimiter(',');
  verify->add_option("--max-order", sel.max_order, "Largest group order to select");
  verify->add_flag("--extended", sel.extended, "Include the extended catalog");
  verify->add_flag("--abelian-only", sel.abelian_only, "Select abelian groups only");
  verify->add_flag("--no-timing", no_timing, "Omit elapsed_ms fields");
  add_common(verify);

  auto* catalog = app.add_subcommand("catalog", "List built-in groups");
  add_common(catalog);

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*tensor) {
      return cmd_tensor(input, common, false);
    }
    if (*schur) {
      return cmd_tensor(input, common, true);
    }
    if (*verify) {
      return cmd_verify(sel, common, !no_timing);
    }
    return cmd_catalog(common);
  } catch (tensorsq::Error const& e) {
    std::cerr << e.what() << '\n';
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kExitError;
}
