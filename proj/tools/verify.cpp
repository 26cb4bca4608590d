// Batch verification harness: parameter grids, seeds, suite selection and
// machine-readable JSON reports.
//
// Exit codes: 0 when every non-skipped check passes, 1 when any check
// fails, 2 on usage errors (invalid grid parameters).

#include <localeps/report.hpp>

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <thread>

using namespace localeps;

namespace {

struct Instance {
    long p, m, d;
};

// "3", "3..7" or comma-separated combinations of both.
std::vector<long> parse_values(const std::string& text, std::vector<long>& explicit_singles) {
    std::vector<long> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string part = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (!part.empty()) {
            std::size_t dots = part.find("..");
            if (dots == std::string::npos) {
                long v = std::stol(part);
                out.push_back(v);
                explicit_singles.push_back(v);
            } else {
                long lo = std::stol(part.substr(0, dots));
                long hi = std::stol(part.substr(dots + 2));
                for (long v = lo; v <= hi; ++v) out.push_back(v);
            }
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::string key_of(const Character& ch) {
    return "u" + std::to_string(ch.u) + "_v" + std::to_string(ch.v);
}

nlohmann::ordered_json instance_params(long p, long m, long d) {
    nlohmann::ordered_json j;
    j["p"] = p;
    j["m"] = m;
    j["d"] = d;
    return j;
}

using Task = std::function<CheckResult()>;

Task timed(std::string check_id, nlohmann::ordered_json params, long seed,
           std::function<void(CheckResult&)> body) {
    return [check_id = std::move(check_id), params = std::move(params), seed,
            body = std::move(body)]() {
        CheckResult r;
        r.check_id = check_id;
        r.params = params;
        r.seed = seed;
        auto t0 = std::chrono::steady_clock::now();
        try {
            body(r);
        } catch (const std::exception& e) {
            r.status = "fail";
            r.witness["error"] = e.what();
        }
        auto t1 = std::chrono::steady_clock::now();
        r.elapsed_ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
        return r;
    };
}

bool suite_on(const std::string& suite, const std::string& name) {
    return suite == "all" || suite == name;
}

std::vector<long> det_seeds(long base) { return {base, base + 1, base + 2, base + 3, base + 4}; }

std::vector<long> k4_set(const RunConfig& cfg, long p) {
    if (cfg.k4) return {((*cfg.k4 % p) + p) % p};
    std::vector<long> all;
    for (long k = 0; k < p; ++k) all.push_back(k);
    return all;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification harness for weakly ramified local epsilon constant computations"};
    RunConfig cfg;

    std::string p_text = "3,5", m_text = "1..3", d_text = "1..4", k4_text = "all";
    app.add_option("--p", p_text, "residue characteristic values or range, e.g. 3 or 3..7")
        ->envname("LOCALEPS_P");
    app.add_option("--m", m_text, "base degree values or range")->envname("LOCALEPS_M");
    app.add_option("--d", d_text, "inertia degree values or range")->envname("LOCALEPS_D");
    app.add_option("--k4", k4_text, "Artin parameter: 'all' or a residue")->envname("LOCALEPS_K4");
    app.add_option("--seed", cfg.seed, "base seed for randomized fillings")->envname("LOCALEPS_SEED");
    app.add_option("--suite", cfg.suite,
                   "groupring | lattice | fundmatrix | kgroup | residue | gauss | all")
        ->envname("LOCALEPS_SUITE");
    app.add_option("--report", cfg.report_path, "path of the JSON report")->envname("LOCALEPS_REPORT");
    app.add_option("--coeff-bound", cfg.coeff_bound, "search box bound for the lattice generator")
        ->envname("LOCALEPS_COEFF_BOUND");
    app.add_option("--pd-limit", cfg.pd_limit, "largest p*d for the kernel-lattice oracle")
        ->envname("LOCALEPS_PD_LIMIT");
    app.add_option("--level-limit", cfg.level_limit, "largest supported cyclotomic level")
        ->envname("LOCALEPS_LEVEL_LIMIT");
    app.add_option("--jobs", cfg.jobs, "worker threads")->envname("LOCALEPS_JOBS");
    app.add_option("--convention-path", cfg.convention_path,
                   "persisted Gauss-sum convention artifact")
        ->envname("LOCALEPS_CONVENTION");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    static const std::set<std::string> kSuites{"groupring", "lattice", "fundmatrix",
                                               "kgroup",    "residue", "gauss",
                                               "all"};
    if (!kSuites.count(cfg.suite)) {
        std::cerr << "error: unknown suite '" << cfg.suite << "'\n";
        return 2;
    }

    std::vector<long> p_explicit, m_explicit, d_explicit;
    std::vector<long> p_list, m_list, d_list;
    try {
        p_list = parse_values(p_text, p_explicit);
        m_list = parse_values(m_text, m_explicit);
        d_list = parse_values(d_text, d_explicit);
        if (k4_text == "all")
            cfg.k4.reset();
        else
            cfg.k4 = std::stol(k4_text);
    } catch (const std::exception&) {
        std::cerr << "error: could not parse a numeric option\n";
        return 2;
    }

    for (long p : p_explicit) {
        if (!is_prime(p) || p == 2) {
            std::cerr << "error: p = " << p << " violates the hypothesis that p is an odd prime\n";
            return 2;
        }
    }
    if (m_explicit.size() == 1 && d_explicit.size() == 1 &&
        std::gcd(m_explicit[0], d_explicit[0]) != 1) {
        std::cerr << "error: m = " << m_explicit[0] << ", d = " << d_explicit[0]
                  << " violates the hypothesis that m and d are relatively prime\n";
        return 2;
    }

    cfg.p_values.clear();
    for (long p : p_list)
        if (is_prime(p) && p != 2) cfg.p_values.push_back(p);
    cfg.m_values = m_list;
    cfg.d_values = d_list;

    std::vector<Instance> grid;
    for (long p : cfg.p_values)
        for (long m : cfg.m_values)
            for (long d : cfg.d_values)
                if (m >= 1 && d >= 1 && std::gcd(m, d) == 1) grid.push_back({p, m, d});
    if (grid.empty()) {
        std::cerr << "error: the parameter grid is empty after applying the hypotheses\n";
        return 2;
    }

    set_level_limit(cfg.level_limit);

    // Resolve the Gauss-sum convention up front: load the persisted artifact
    // or calibrate at p = 3 and persist.
    std::optional<GaussConvention> conv;
    bool need_gauss = suite_on(cfg.suite, "gauss");
    if (need_gauss) {
        conv = load_convention(cfg.convention_path);
        if (!conv) {
            auto cal = calibrate_and_search_alpha(3, cfg.coeff_bound);
            if (cal.ok) {
                conv = cal.conv;
                save_convention(cfg.convention_path, cal.conv);
            }
        }
    }

    std::vector<Task> tasks;
    std::set<std::string> dedupe;
    auto once = [&dedupe](const std::string& key) { return dedupe.insert(key).second; };

    for (const Instance& inst : grid) {
        const long p = inst.p, m = inst.m, d = inst.d;

        if (suite_on(cfg.suite, "groupring") && once("gr" + std::to_string(p))) {
            tasks.push_back(timed("lemma_3_2_3", instance_params(p, m, d), cfg.seed, [p](CheckResult& r) {
                auto [u, ok] = lemma_3_2_3_check(p);
                r.status = ok ? "pass" : "fail";
                nlohmann::ordered_json terms = nlohmann::ordered_json::array();
                for (const auto& [i, j, s] : u.to_triples()) terms.push_back({i, j, s});
                r.witness["u"] = terms;
                r.witness["augmentation"] = u.augmentation().to_string();
            }));
            tasks.push_back(timed("lemma_3_2_4", instance_params(p, m, d), cfg.seed, [p](CheckResult& r) {
                r.status = lemma_3_2_4_check(p) ? "pass" : "fail";
            }));
        }

        if (suite_on(cfg.suite, "lattice") && once("lat" + std::to_string(p) + "_" + std::to_string(d))) {
            long pd_limit = cfg.pd_limit;
            tasks.push_back(timed("x2_generators", instance_params(p, m, d), cfg.seed,
                                  [p, d, pd_limit](CheckResult& r) {
                                      if (p * d > pd_limit) {
                                          r.status = "skipped";
                                          r.witness["reason"] = "p*d exceeds pd_limit";
                                          return;
                                      }
                                      r.status = x2_generators_check(p, d, pd_limit) ? "pass" : "fail";
                                  }));
        }

        if (suite_on(cfg.suite, "fundmatrix")) {
            tasks.push_back(timed("lemma_4_2_8", instance_params(p, m, d), cfg.seed,
                                  [p, m, d](CheckResult& r) {
                                      r.status = lemma_4_2_8_check(GroupParams(p, m, d)) ? "pass" : "fail";
                                  }));
            long base_seed = cfg.seed;
            tasks.push_back(timed("prop_4_3_1", instance_params(p, m, d), cfg.seed,
                                  [p, m, d, base_seed](CheckResult& r) {
                                      GroupParams gp(p, m, d);
                                      auto res = prop_4_3_1_check(gp, det_seeds(base_seed));
                                      r.status = res.ok ? "pass" : "fail";
                                      r.witness["delta"] = res.delta;
                                      if (!res.note.empty()) r.witness["note"] = res.note;
                                      nlohmann::ordered_json dets;
                                      for (const auto& [seed, by_char] : res.determinants) {
                                          nlohmann::ordered_json one;
                                          for (const auto& [ch, v] : by_char) one[key_of(ch)] = v.to_string();
                                          dets["seed_" + std::to_string(seed)] = one;
                                      }
                                      r.witness["determinants"] = dets;
                                  }));
        }

        if (suite_on(cfg.suite, "kgroup")) {
            tasks.push_back(timed("correction_term_crosscheck", instance_params(p, m, d), cfg.seed,
                                  [p, m, d](CheckResult& r) {
                                      correction_term(GroupParams(p, m, d)); // throws on mismatch
                                      r.status = "pass";
                                  }));
            auto k4s = k4_set(cfg, p);
            tasks.push_back(timed("prop_5_1_5", instance_params(p, m, d), cfg.seed,
                                  [p, m, d, k4s](CheckResult& r) {
                                      GroupParams gp(p, m, d);
                                      bool ok = true;
                                      for (long k4 : k4s) ok = ok && prop_5_1_5_check(gp, ArtinParam(k4, p));
                                      r.status = ok ? "pass" : "fail";
                                      r.witness["k4_checked"] = k4s;
                                  }));
            long base_seed = cfg.seed;
            tasks.push_back(timed("theorem_1", instance_params(p, m, d), cfg.seed,
                                  [p, m, d, k4s, base_seed](CheckResult& r) {
                                      GroupParams gp(p, m, d);
                                      auto det = prop_4_3_1_check(gp, det_seeds(base_seed));
                                      bool all_ok = true;
                                      nlohmann::ordered_json per_k4;
                                      for (long k4 : k4s) {
                                          auto rep = theorem_verify(gp, ArtinParam(k4, p),
                                                                    det_seeds(base_seed), &det);
                                          nlohmann::ordered_json steps;
                                          for (const auto& s : rep.steps) steps[s.name] = s.pass;
                                          per_k4[std::to_string(k4)] = steps;
                                          all_ok = all_ok && rep.all_pass();
                                      }
                                      r.status = all_ok ? "pass" : "fail";
                                      r.witness["k4_results"] = per_k4;
                                  }));
            if (once("congr" + std::to_string(p)))
                tasks.push_back(timed("congruence", instance_params(p, m, d), cfg.seed,
                                      [p](CheckResult& r) {
                                          r.status = congruence_check(p) ? "pass" : "fail";
                                      }));
            if (once("mutation")) {
                tasks.push_back(timed("mutation_epsilon_scaled", instance_params(p, m, d), cfg.seed,
                                      [p, m, d](CheckResult& r) {
                                          GroupParams gp(p, m, d);
                                          r.status = mutation_epsilon_detected(gp, ArtinParam(0, p))
                                                         ? "pass"
                                                         : "fail";
                                      }));
                tasks.push_back(timed("mutation_matrix_flip", instance_params(p, m, d), cfg.seed,
                                      [p, m, d](CheckResult& r) {
                                          GroupParams gp(p, m, d);
                                          auto M = build_M(gp);
                                          auto it = M.entries.begin();
                                          M.set(it->first.first, it->first.second, -it->second);
                                          auto rhs = GroupRingElem::monomial(
                                              gp, 0, gp.mtilde - 1,
                                              CycloElem(gp.m % 2 == 0 ? 1L : -1L));
                                          r.status = matrix_det_matches(M, rhs) ? "fail" : "pass";
                                      }));
            }
        }

        if (suite_on(cfg.suite, "residue")) {
            tasks.push_back(timed("lemma_3_1_3", instance_params(p, m, d), cfg.seed,
                                  [p, m, d](CheckResult& r) {
                                      r.status = lemma_3_1_3_check(p, m, d) ? "pass" : "fail";
                                  }));
            tasks.push_back(timed("eq_3", instance_params(p, m, d), cfg.seed, [p, m, d](CheckResult& r) {
                r.status = eq_3_check(p, m, d, 0) ? "pass" : "fail";
                r.witness["alpha1_index"] = 0;
            }));
            if (once("basis2_" + std::to_string(p) + "_" + std::to_string(m)))
                tasks.push_back(timed("basis_2", instance_params(p, m, d), cfg.seed,
                                      [p, m](CheckResult& r) {
                                          r.status = basis_2_check(p, m) ? "pass" : "fail";
                                      }));
        }

        if (suite_on(cfg.suite, "gauss")) {
            if (once("gauss_abs" + std::to_string(p)))
                tasks.push_back(timed("abs_square", instance_params(p, m, d), cfg.seed,
                                      [p, conv](CheckResult& r) {
                                          if (!conv) {
                                              r.status = "fail";
                                              r.witness["error"] = "no calibrated convention";
                                              return;
                                          }
                                          bool ok = true;
                                          for (long e = 1; e < p; ++e)
                                              ok = ok && abs_square_check(RamifiedChar(p, e), *conv);
                                          r.status = ok ? "pass" : "fail";
                                      }));
            if (d > 1 && once("gauss_twist" + std::to_string(p) + "_" + std::to_string(d)))
                tasks.push_back(timed("twist_identity", instance_params(p, m, d), cfg.seed,
                                      [p, d, conv](CheckResult& r) {
                                          if (!conv) {
                                              r.status = "fail";
                                              return;
                                          }
                                          r.status = twist_identity_check(p, *conv, d) ? "pass" : "fail";
                                      }));
            if (once("gauss_511" + std::to_string(p))) {
                long seed = cfg.seed;
                tasks.push_back(timed("lemma_5_1_1", instance_params(p, m, d), cfg.seed,
                                      [p, conv, seed](CheckResult& r) {
                                          if (!conv) {
                                              r.status = "fail";
                                              return;
                                          }
                                          bool ok = lemma_5_1_1a_check(
                                              p, *conv, 5, static_cast<unsigned long long>(seed));
                                          if (p <= 5)
                                              ok = ok && lemma_5_1_1b_check(
                                                             p, *conv, 5,
                                                             static_cast<unsigned long long>(seed) + 1);
                                          r.status = ok ? "pass" : "fail";
                                      }));
            }
        }
    }

    if (suite_on(cfg.suite, "gauss")) {
        long bound = cfg.coeff_bound;
        tasks.push_back(timed("lemma_5_1_4_calibration", instance_params(3, 1, 1), cfg.seed,
                              [bound, conv](CheckResult& r) {
                                  auto cal = calibrate_and_search_alpha(3, bound);
                                  r.status = cal.ok ? "pass" : "fail";
                                  r.witness["classes_succeeded"] = cal.classes_succeeded;
                                  r.witness["candidates_tested"] = cal.candidates_tested;
                                  if (!cal.note.empty()) r.witness["note"] = cal.note;
                                  if (cal.ok) {
                                      r.witness["alpha"] = cal.alpha.to_string();
                                      r.witness["alpha_coords"] = cal.alpha_coords;
                                      r.witness["normal_basis_generator"] =
                                          normal_basis_generator_check(cal.alpha,
                                                                       sqrt_inv_diff_lattice(3));
                                      // The persisted convention must belong to the found class.
                                      if (conv && conv->char_sign * conv->artin_dir !=
                                                      cal.conv.char_sign * cal.conv.artin_dir)
                                          r.status = "fail";
                                  }
                              }));
        bool have5 = false;
        for (long p : cfg.p_values) have5 = have5 || p == 5;
        if (have5) {
            long bound5 = cfg.coeff_bound;
            tasks.push_back(timed("lemma_5_1_4_p5_reverify", instance_params(5, 1, 1), cfg.seed,
                                  [bound5, conv](CheckResult& r) {
                                      if (!conv) {
                                          r.status = "fail";
                                          r.witness["error"] = "no calibrated convention";
                                          return;
                                      }
                                      SqrtInvDiff lat = sqrt_inv_diff_lattice(5);
                                      auto coords = search_alpha(5, *conv, bound5, lat);
                                      if (!coords) {
                                          r.status = "fail";
                                          r.witness["note"] = "no alpha within the coefficient bound";
                                          return;
                                      }
                                      CycloElem alpha = CycloElem(0L).embed_to(25);
                                      for (std::size_t i = 0; i < coords->size(); ++i)
                                          if ((*coords)[i] != 0)
                                              alpha += CycloElem((*coords)[i]) * lat.a_basis[i];
                                      r.witness["alpha"] = alpha.to_string();
                                      r.witness["alpha_coords"] = *coords;
                                      r.status = normal_basis_generator_check(alpha, lat) ? "pass" : "fail";
                                  }));
        }
    }

    // Run the task list on a small worker pool; results keep task order.
    std::vector<CheckResult> results(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) break;
            results[i] = tasks[i]();
        }
    };
    long jobs = std::max(1L, cfg.jobs);
    std::vector<std::thread> pool;
    for (long t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    bool any_fail = false;
    for (const auto& r : results) {
        if (r.status == "fail") any_fail = true;
        std::cout << "[" << (r.status == "pass" ? "PASS" : r.status == "skipped" ? "SKIP" : "FAIL")
                  << "] " << r.check_id << " p=" << r.params.value("p", 0L)
                  << " m=" << r.params.value("m", 0L) << " d=" << r.params.value("d", 0L) << " ("
                  << r.elapsed_ms << " ms)\n";
    }
    std::cout << (any_fail ? "RESULT: FAIL" : "RESULT: PASS") << " (" << results.size()
              << " checks)\n";

    if (!cfg.report_path.empty()) {
        std::ofstream os(cfg.report_path);
        if (!os) {
            std::cerr << "error: cannot write report to " << cfg.report_path << "\n";
            return 2;
        }
        os << report_json(cfg, conv, results).dump(2) << "\n";
    }
    return any_fail ? 1 : 0;
}
