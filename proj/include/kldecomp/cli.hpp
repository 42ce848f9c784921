#ifndef KLDECOMP_CLI_HPP
#define KLDECOMP_CLI_HPP

#include "kldecomp/decomp.hpp"
#include "kldecomp/selftest.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace kld::cli {

enum ExitCode : int { ok = 0, violation = 1, usage = 2 };

struct usage_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct JobConfig {
  int e = 2;
  std::vector<int> s;
  std::optional<Block> block;
  std::optional<int> n;
  std::optional<std::vector<int>> m;
  std::string format = "json";
  std::string output;
  int jobs = 1;
};

// One serialized block: what the json, csv and text writers print.
struct DecompRecord {
  int e = 2;
  std::vector<int> s;
  std::string block;
  std::vector<int> m;
  std::vector<std::vector<std::vector<int>>> labels;
  std::vector<std::vector<std::string>> D;
  std::vector<std::vector<std::string>> C;

  friend bool operator==(const DecompRecord&, const DecompRecord&) = default;
};

inline void to_json(nlohmann::json& j, const DecompRecord& r) {
  j = nlohmann::json{{"e", r.e}, {"s", r.s}, {"block", r.block}, {"m", r.m},
                     {"labels", r.labels}, {"D", r.D}, {"C", r.C}};
}

inline void from_json(const nlohmann::json& j, DecompRecord& r) {
  j.at("e").get_to(r.e);
  j.at("s").get_to(r.s);
  j.at("block").get_to(r.block);
  j.at("m").get_to(r.m);
  j.at("labels").get_to(r.labels);
  j.at("D").get_to(r.D);
  j.at("C").get_to(r.C);
}

inline std::vector<std::vector<std::string>> render(const PolyMatrix& A) {
  std::vector<std::vector<std::string>> out;
  for (const auto& row : A) {
    out.emplace_back();
    for (const auto& p : row) out.back().push_back(p.str());
  }
  return out;
}

inline DecompRecord make_record(const BlockResult& r) {
  DecompRecord rec;
  rec.e = r.block.chg.e;
  rec.s = r.block.chg.s;
  rec.block = block_str(r.block.d);
  rec.m = r.block.m;
  for (const auto& lab : r.block.labels) rec.labels.push_back(lab.lam.components);
  rec.D = render(r.D);
  rec.C = render(r.C);
  return rec;
}

inline std::string label_str(const std::vector<std::vector<int>>& lam) { return Multipartition{lam}.str(); }

inline std::string write_json(const std::vector<DecompRecord>& recs) {
  return nlohmann::json(recs).dump(2) + "\n";
}

inline std::vector<DecompRecord> read_json(const std::string& text) {
  return nlohmann::json::parse(text).get<std::vector<DecompRecord>>();
}

inline std::string csv_field(const std::string& f) {
  if (f.find_first_of(",\"\n") == std::string::npos) return f;
  std::string q = "\"";
  for (char c : f) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

// One row per matrix entry: e,s,block,matrix,row,col,value.
inline std::string write_csv(const std::vector<DecompRecord>& recs) {
  std::ostringstream out;
  out << "e,s,block,matrix,row,col,value\n";
  for (const auto& r : recs) {
    const std::string head =
        std::to_string(r.e) + "," + csv_field(format_word(r.s)) + "," + csv_field(r.block) + ",";
    for (const auto* which : {&r.D, &r.C}) {
      const char* name = which == &r.D ? "D" : "C";
      for (std::size_t i = 0; i < which->size(); ++i)
        for (std::size_t j = 0; j < (*which)[i].size(); ++j)
          out << head << name << ',' << csv_field(label_str(r.labels[i])) << ','
              << csv_field(label_str(r.labels[j])) << ',' << csv_field((*which)[i][j]) << '\n';
    }
  }
  return out.str();
}

inline std::string write_text(const std::vector<DecompRecord>& recs) {
  std::ostringstream out;
  for (std::size_t k = 0; k < recs.size(); ++k) {
    const auto& r = recs[k];
    if (k) out << '\n';
    out << "e=" << r.e << " s=" << format_word(r.s) << " block=" << (r.block.empty() ? "-" : r.block)
        << " m=" << format_word(r.m) << '\n';
    std::vector<std::string> names;
    for (const auto& lam : r.labels) names.push_back(label_str(lam));
    for (const auto* which : {&r.D, &r.C}) {
      out << (which == &r.D ? "D" : "C") << '\n';
      std::size_t w0 = 0;
      for (const auto& nm : names) w0 = std::max(w0, nm.size());
      std::vector<std::size_t> w(names.size());
      for (std::size_t j = 0; j < names.size(); ++j) {
        w[j] = names[j].size();
        for (const auto& row : *which) w[j] = std::max(w[j], row[j].size());
      }
      auto pad = [&](const std::string& s, std::size_t width, bool last) {
        out << s;
        if (!last) out << std::string(width - s.size() + 2, ' ');
      };
      pad("", w0, names.empty());
      for (std::size_t j = 0; j < names.size(); ++j) pad(names[j], w[j], j + 1 == names.size());
      out << '\n';
      for (std::size_t i = 0; i < names.size(); ++i) {
        pad(names[i], w0, false);
        for (std::size_t j = 0; j < names.size(); ++j) pad((*which)[i][j], w[j], j + 1 == names.size());
        out << '\n';
      }
    }
  }
  return out.str();
}

inline std::string serialize(const std::vector<DecompRecord>& recs, const std::string& format) {
  if (format == "json") return write_json(recs);
  if (format == "csv") return write_csv(recs);
  if (format == "text") return write_text(recs);
  throw usage_error("unknown format '" + format + "'");
}

// ---- Memo persistence under KL_CACHE_DIR. ----

inline std::optional<std::filesystem::path> cache_dir() {
  const char* dir = std::getenv("KL_CACHE_DIR");
  if (!dir || !*dir) return std::nullopt;
  return std::filesystem::path(dir);
}

inline std::string join_gens(const ParabolicSubset& f) {
  std::string s;
  for (int g : f.gens()) s += (s.empty() ? "" : "_") + std::to_string(g);
  return s.empty() ? "none" : s;
}

inline std::filesystem::path quotient_cache_file(const std::filesystem::path& dir, int N, const ParabolicSubset& nu) {
  return dir / ("quotient-N" + std::to_string(N) + "-nu" + join_gens(nu) + ".txt");
}

inline std::filesystem::path hecke_cache_file(const std::filesystem::path& dir, int N) {
  return dir / ("hecke-N" + std::to_string(N) + ".txt");
}

// ---- decomp ----

inline std::vector<BlockData> plan_blocks(const JobConfig& cfg) {
  if (cfg.e < 2) throw usage_error("--e must be at least 2");
  if (cfg.s.empty()) throw usage_error("--s must list at least one residue");
  if (cfg.block.has_value() == cfg.n.has_value()) throw usage_error("give exactly one of --block and --n");
  if (cfg.jobs < 1) throw usage_error("--jobs must be positive");
  const Charge chg(cfg.s, cfg.e);
  std::vector<Block> blocks;
  if (cfg.block) {
    blocks.push_back(*cfg.block);
  } else {
    if (*cfg.n < 0) throw usage_error("--n must be nonnegative");
    blocks = blocks_of_size(chg, *cfg.n);
  }
  std::vector<BlockData> out;
  for (const auto& d : blocks) {
    if (cfg.m) check_m(chg, *cfg.m, block_size(d));
    out.push_back(prepare_block(chg, d, cfg.m));
  }
  return out;
}

// Blocks are handed to workers in order; each worker owns its engines and the
// results are gathered by index, so the output does not depend on scheduling.
inline std::vector<BlockResult> compute_blocks(std::vector<BlockData> plan, int jobs) {
  const auto dir = cache_dir();
  std::vector<std::optional<BlockResult>> slots(plan.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(jobs));
  std::vector<std::map<std::filesystem::path, PolyTable>> tables(static_cast<std::size_t>(jobs));

  auto work = [&](std::size_t me) {
    try {
      std::map<std::filesystem::path, QuotientKL> engines;
      for (std::size_t k; (k = next.fetch_add(1)) < plan.size();) {
        const BlockData& b = plan[k];
        const auto key = quotient_cache_file(dir.value_or("."), b.ctx.N, b.ctx.nu);
        auto it = engines.find(key);
        if (it == engines.end()) {
          it = engines.emplace(key, make_engine(b)).first;
          if (dir && std::filesystem::exists(key)) it->second.import_table(load_poly_table(key));
        }
        slots[k] = block_matrices(it->second, b);
      }
      if (dir)
        for (const auto& [key, eng] : engines) tables[me][key] = eng.export_table();
    } catch (...) {
      errors[me] = std::current_exception();
    }
  };
  const auto n = static_cast<std::size_t>(std::max(1, jobs));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < n; ++w) pool.emplace_back(work, w);
  work(0);
  for (auto& t : pool) t.join();
  for (const auto& err : errors)
    if (err) std::rethrow_exception(err);

  if (dir) {
    std::filesystem::create_directories(*dir);
    std::map<std::filesystem::path, PolyTable> merged;
    for (auto& per : tables)
      for (auto& [key, rows] : per) merged[key].insert(merged[key].end(), rows.begin(), rows.end());
    for (auto& [key, rows] : merged) {
      if (std::filesystem::exists(key)) {
        PolyTable old = load_poly_table(key);
        rows.insert(rows.end(), old.begin(), old.end());
      }
      save_poly_table(key, std::move(rows));
    }
  }
  std::vector<BlockResult> out;
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

inline void check_result(const BlockResult& r) {
  const auto bad = unitriangularity_violations(r.D);
  if (!bad.empty())
    throw invariant_violation("block " + block_str(r.block.d) + ": D is not unitriangular: " + bad.front());
}

inline std::string run_decomp(const JobConfig& cfg) {
  if (cfg.format != "json" && cfg.format != "csv" && cfg.format != "text")
    throw usage_error("unknown format '" + cfg.format + "'");
  std::vector<BlockData> plan;
  try {
    plan = plan_blocks(cfg);
  } catch (const invariant_violation&) {
    throw;
  } catch (const std::invalid_argument& err) {
    throw usage_error(err.what());
  }
  std::vector<DecompRecord> recs;
  for (const auto& r : compute_blocks(std::move(plan), cfg.jobs)) {
    check_result(r);
    recs.push_back(make_record(r));
  }
  return serialize(recs, cfg.format);
}

// ---- kl ----

inline std::string run_kl(int rank, const std::string& xw, const std::string& yw, const std::string& family,
                          const std::string& fgens) {
  AffinePerm x;
  AffinePerm y;
  std::optional<ParabolicSubset> f;
  try {
    if (rank < 1) throw usage_error("--rank must be positive");
    auto reduced = [&](const std::string& text) {
      const auto word = parse_int_list(text);
      AffinePerm w = AffinePerm::from_word(rank, word);
      if (w.length() != static_cast<int>(word.size())) throw usage_error("word '" + text + "' is not reduced");
      return w;
    };
    x = reduced(xw);
    y = reduced(yw);
    if (family == "n" || family == "ninv") {
      f = ParabolicSubset(rank, parse_int_list(fgens));
      f->require_finite();
      for (const auto* w : {&x, &y})
        if (!is_min_rep(*w, *f, Side::left))
          throw not_minimal_rep(w->str() + " is not shortest in its coset W_f w");
    } else if (family != "h" && family != "hinv") {
      throw usage_error("unknown family '" + family + "'");
    }
  } catch (const std::logic_error& err) {
    throw usage_error(err.what());
  }
  const auto dir = cache_dir();
  KLEngine eng(rank);
  if (dir && std::filesystem::exists(hecke_cache_file(*dir, rank)))
    eng.import_table(load_poly_table(hecke_cache_file(*dir, rank)));
  LaurentPoly p;
  if (family == "h") p = eng.h(x, y);
  if (family == "hinv") p = eng.hinv(x, y);
  if (family == "n") p = eng.n(x, y, *f);
  if (family == "ninv") p = eng.ninv(x, y, *f);
  if (dir) {
    std::filesystem::create_directories(*dir);
    save_poly_table(hecke_cache_file(*dir, rank), eng.export_table());
  }
  return p.str() + "\n";
}

// ---- entry point ----

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graded decomposition and Cartan matrices of cyclotomic q-Schur algebra blocks"};
  app.require_subcommand(1);

  JobConfig cfg;
  std::string s_text;
  std::string block_text;
  std::string m_text = "auto";
  int n = -1;
  auto* dec = app.add_subcommand("decomp", "Decomposition and Cartan matrices of blocks");
  dec->add_option("--e", cfg.e, "quantum characteristic")->required();
  dec->add_option("--s", s_text, "charge, comma separated residues")->required();
  auto* nopt = dec->add_option("--n", n, "all blocks of this size");
  auto* bopt = dec->add_option("--block", block_text, "one block as residue:count pairs, e.g. 0:1,1:2");
  nopt->excludes(bopt);
  dec->add_option("--m", m_text, "explicit m, comma separated, or auto");
  dec->add_option("--format", cfg.format, "json, csv or text");
  dec->add_option("--output", cfg.output, "output file (default stdout)");
  dec->add_option("--jobs", cfg.jobs, "worker threads");

  int rank = 0;
  std::string xw;
  std::string yw;
  std::string family = "h";
  std::string fgens;
  auto* kl = app.add_subcommand("kl", "One Kazhdan-Lusztig polynomial");
  kl->add_option("--rank", rank, "N of the affine symmetric group")->required();
  kl->add_option("--x", xw, "reduced word, e.g. 1,0,2")->required();
  kl->add_option("--y", yw, "reduced word")->required();
  kl->add_option("--family", family, "h, hinv, n or ninv");
  kl->add_option("--f", fgens, "parabolic generators for n and ninv");

  std::string depth = "small";
  auto* st = app.add_subcommand("selftest", "Run the invariant suites");
  st->add_option("depth", depth, "small or full");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return usage;
  }

  try {
    std::string text;
    if (*dec) {
      try {
        cfg.s = parse_int_list(s_text);
        if (!block_text.empty()) cfg.block = parse_block(block_text, std::max(cfg.e, 1));
        if (*nopt) cfg.n = n;
        if (m_text != "auto") cfg.m = parse_int_list(m_text);
      } catch (const std::invalid_argument& e) {
        throw usage_error(e.what());
      }
      text = run_decomp(cfg);
      if (!cfg.output.empty()) {
        std::ofstream f(cfg.output, std::ios::binary);
        if (!f) throw usage_error("cannot write " + cfg.output);
        f << text;
        return ok;
      }
    } else if (*kl) {
      text = run_kl(rank, xw, yw, family, fgens);
    } else if (*st) {
      if (depth != "small" && depth != "full") throw usage_error("selftest depth must be small or full");
      const auto reports = run_selftest(depth == "full");
      out << format_reports(reports);
      return all_passed(reports) ? ok : violation;
    }
    out << text;
    return ok;
  } catch (const usage_error& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const std::exception& e) {
    err << "invariant violation: " << e.what() << '\n';
    return violation;
  }
}

}  // namespace kld::cli

#endif  // KLDECOMP_CLI_HPP
