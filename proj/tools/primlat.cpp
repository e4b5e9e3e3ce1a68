#include <chrono>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "primlat/errors.hpp"
#include "primlat/experiments.hpp"
#include "primlat/int_matrix.hpp"
#include "primlat/lattice.hpp"
#include "primlat/numbers.hpp"
#include "primlat/report.hpp"
#include "primlat/sampling.hpp"

using namespace primlat;
using nlohmann::json;

namespace {

constexpr std::uint64_t kDefaultSeed = 20240913;

json matrix_json(const IntMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(m(i, j).get_str());
        rows.push_back(row);
    }
    return rows;
}

void print_labeled_matrix(const std::string& label, const IntMatrix& m) {
    std::cout << "# " << label << "\n" << format_matrix(m);
}

std::vector<std::uint64_t> parse_n_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stoull(tok));
        } catch (const std::exception&) {
            throw parse_error("bad n-list entry: '" + tok + "'");
        }
    }
    if (out.empty()) throw parse_error("empty n-list");
    return out;
}

struct CommonEstimateOpts {
    std::size_t d = 2;
    std::size_t m = 1;
    std::uint64_t trials = 100000;
    std::uint64_t seed = kDefaultSeed;
    unsigned workers = 1;
    std::string box = "centered";
    bool as_json = false;
    bool as_csv = false;
};

PointSet load_prefix(const std::string& path, std::size_t d) {
    if (path.empty()) {
        PointSet p;
        p.dim = d;
        return p;
    }
    PointSet p = PointSet::from_matrix(load_matrix_file(path));
    if (d != 0 && p.dim != d)
        throw shape_error("prefix dimension " + std::to_string(p.dim) +
                          " does not match -d " + std::to_string(d));
    return p;
}

int run(int argc, char** argv) {
    CLI::App app{"primitive lattice set toolkit: exact integer lattice "
                 "algorithms and randomized density experiments"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    // hnf
    auto* c_hnf = app.add_subcommand("hnf", "Hermite normal form with unimodular multiplier");
    std::string hnf_file;
    bool hnf_bounded_flag = false, hnf_json = false;
    c_hnf->add_option("file", hnf_file, "matrix file")->required();
    c_hnf->add_flag("--bounded", hnf_bounded_flag, "use the bounded-multiplier construction");
    c_hnf->add_flag("--json", hnf_json, "JSON output");

    // check
    auto* c_check = app.add_subcommand("check", "primitivity verdict for a point set");
    std::string check_file;
    bool check_json = false;
    c_check->add_option("file", check_file, "matrix file, rows are points")->required();
    c_check->add_flag("--json", check_json, "JSON output");

    // complete
    auto* c_complete = app.add_subcommand("complete", "complete a primitive set to a basis of Z^d");
    std::string complete_file;
    bool complete_json = false;
    c_complete->add_option("file", complete_file, "matrix file")->required();
    c_complete->add_flag("--json", complete_json, "JSON output");

    // estimate
    auto* c_est = app.add_subcommand("estimate", "Monte Carlo primitive-set probability");
    CommonEstimateOpts est;
    std::uint64_t est_n = 1000000;
    c_est->add_option("-d", est.d, "ambient dimension")->required();
    c_est->add_option("-m", est.m, "points per set")->required();
    c_est->add_option("-n", est_n, "box side length");
    c_est->add_option("--trials", est.trials, "trial count");
    c_est->add_option("--seed", est.seed, "RNG seed");
    c_est->add_option("--workers", est.workers, "worker threads");
    c_est->add_option("--box", est.box, "origin|centered|poly:J|file=PATH|crt");
    c_est->add_flag("--json", est.as_json, "JSON output");
    c_est->add_flag("--csv", est.as_csv, "CSV output");

    // exact
    auto* c_exact = app.add_subcommand("exact", "exact probability by full enumeration");
    std::size_t ex_d = 2, ex_m = 1;
    std::uint64_t ex_n = 10;
    std::string ex_box = "origin";
    bool ex_json = false;
    c_exact->add_option("-d", ex_d, "ambient dimension")->required();
    c_exact->add_option("-m", ex_m, "points per set")->required();
    c_exact->add_option("-n", ex_n, "box side length")->required();
    c_exact->add_option("--box", ex_box, "origin|centered|poly:J|file=PATH");
    c_exact->add_flag("--json", ex_json, "JSON output");

    // identity
    auto* c_ident = app.add_subcommand("identity", "finite Mobius inclusion-exclusion identity");
    std::string id_prefix;
    std::size_t id_d = 2;
    std::uint64_t id_n = 4;
    std::string id_box = "origin";
    bool id_json = false;
    c_ident->add_option("--prefix", id_prefix, "prefix point file (omit for empty prefix)");
    c_ident->add_option("-d", id_d, "ambient dimension")->required();
    c_ident->add_option("-n", id_n, "box side length")->required();
    c_ident->add_option("--box", id_box, "box for the final point");
    c_ident->add_flag("--json", id_json, "JSON output");

    // counts
    auto* c_counts = app.add_subcommand("counts", "sublattice point counts and covering bounds");
    std::string ct_prefix;
    std::size_t ct_d = 2;
    std::uint64_t ct_n = 4;
    unsigned long ct_modulus = 2;
    std::string ct_box = "origin";
    bool ct_json = false;
    c_counts->add_option("--prefix", ct_prefix, "prefix point file (omit for empty prefix)");
    c_counts->add_option("-d", ct_d, "ambient dimension")->required();
    c_counts->add_option("-D,--modulus", ct_modulus, "divisor D")->required();
    c_counts->add_option("-n", ct_n, "box side length")->required();
    c_counts->add_option("--box", ct_box, "box for the final point");
    c_counts->add_flag("--json", ct_json, "JSON output");

    // converge
    auto* c_conv = app.add_subcommand("converge", "estimates over a ladder of box sizes");
    CommonEstimateOpts cv;
    std::string cv_nlist = "100,1000,10000,100000,1000000";
    c_conv->add_option("-d", cv.d, "ambient dimension")->required();
    c_conv->add_option("-m", cv.m, "points per set")->required();
    c_conv->add_option("--n-list", cv_nlist, "comma-separated box sides, nondecreasing");
    c_conv->add_option("--trials", cv.trials, "trials per row");
    c_conv->add_option("--seed", cv.seed, "RNG seed");
    c_conv->add_option("--workers", cv.workers, "worker threads");
    c_conv->add_option("--box", cv.box, "origin|centered|poly:J|file=PATH");
    c_conv->add_flag("--json", cv.as_json, "JSON output (default CSV)");

    // crt-box
    auto* c_crt = app.add_subcommand("crt-box", "CRT box containing no primitive point");
    std::size_t crt_d = 2;
    std::uint64_t crt_n = 2;
    bool crt_json = false;
    c_crt->add_option("-d", crt_d, "ambient dimension")->required();
    c_crt->add_option("-n", crt_n, "box side length")->required();
    c_crt->add_flag("--json", crt_json, "JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);  // --help / --version
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    auto t0 = std::chrono::steady_clock::now();
    int status = 0;

    if (*c_hnf) {
        IntMatrix a = load_matrix_file(hnf_file);
        if (hnf_bounded_flag) {
            BoundedHnfResult r = hnf_bounded(a);
            if (hnf_json) {
                json j;
                j["schema_version"] = kSchemaVersion;
                j["command"] = "hnf";
                j["bounded"] = true;
                j["h"] = matrix_json(r.hnf.h);
                j["u"] = matrix_json(r.hnf.u);
                j["report"] = {{"p", r.report.p},
                               {"q", r.report.q},
                               {"m0", r.report.m0.get_str()},
                               {"bound", r.report.bound.get_str()},
                               {"max_abs_u", r.report.max_abs_u.get_str()}};
                std::cout << j.dump() << "\n";
            } else {
                print_labeled_matrix("H", r.hnf.h);
                print_labeled_matrix("U", r.hnf.u);
                std::cout << "# bound report: p=" << r.report.p << " q=" << r.report.q
                          << " m0=" << r.report.m0 << " bound=" << r.report.bound
                          << " max|U|=" << r.report.max_abs_u << "\n";
            }
        } else {
            HnfResult r = hnf(a);
            if (hnf_json) {
                json j;
                j["schema_version"] = kSchemaVersion;
                j["command"] = "hnf";
                j["bounded"] = false;
                j["h"] = matrix_json(r.h);
                j["u"] = matrix_json(r.u);
                std::cout << j.dump() << "\n";
            } else {
                print_labeled_matrix("H", r.h);
                print_labeled_matrix("U", r.u);
            }
        }
    } else if (*c_check) {
        PointSet s = PointSet::from_matrix(load_matrix_file(check_file));
        bool prim = is_primitive(s);
        bool full_rank = rank(s.as_matrix()) == s.size();
        if (check_json) {
            json j;
            j["schema_version"] = kSchemaVersion;
            j["command"] = "check";
            j["primitive"] = prim;
            if (full_rank) j["index"] = saturation_index(s).get_str();
            std::cout << j.dump() << "\n";
        } else {
            std::cout << (prim ? "primitive" : "not-primitive") << "\n";
            if (full_rank) std::cout << "index " << saturation_index(s) << "\n";
        }
        status = prim ? 0 : 1;
    } else if (*c_complete) {
        PointSet s = PointSet::from_matrix(load_matrix_file(complete_file));
        if (!is_primitive(s)) {
            std::cerr << "input is not a primitive set\n";
            return 1;
        }
        IntMatrix basis = complete_to_basis(s);
        mpz_class det = determinant(basis);
        if (det != 1 && det != -1)
            throw contract_error("internal: completed basis is not unimodular");
        if (complete_json) {
            json j;
            j["schema_version"] = kSchemaVersion;
            j["command"] = "complete";
            j["basis"] = matrix_json(basis);
            j["det"] = det.get_str();
            std::cout << j.dump() << "\n";
        } else {
            std::cout << format_matrix(basis);
        }
    } else if (*c_est) {
        BoxFamily fam = parse_box_family(est.box);
        EstimateResult r = estimate_primitive_probability(est.d, est.m, fam, est_n,
                                                          est.trials, est.seed, est.workers);
        if (est.as_json) {
            std::cout << estimate_to_json(r) << "\n";
        } else if (est.as_csv) {
            std::cout << convergence_csv_header() << "\n" << convergence_csv_row(r) << "\n";
        } else {
            std::cout << "d=" << r.d << " m=" << r.m << " n=" << r.n << " box=" << r.box_kind
                      << " seed=" << r.seed << "\n"
                      << "trials    " << r.trials << "\n"
                      << "successes " << r.successes << "\n"
                      << "estimate  " << format_decimal(r.estimate) << "\n"
                      << "std_error " << format_decimal(r.std_error) << "\n"
                      << "target    [" << format_decimal(r.target.lo.get_d()) << ", "
                      << format_decimal(r.target.hi.get_d()) << "]\n"
                      << "gap       " << format_decimal(r.gap) << "\n";
        }
    } else if (*c_exact) {
        BoxFamily fam = parse_box_family(ex_box);
        BoxSpec box = make_box(fam, ex_d, ex_m, ex_n);
        mpq_class p = exact_primitive_probability(ex_d, ex_m, box);
        if (ex_json) {
            json j;
            j["schema_version"] = kSchemaVersion;
            j["command"] = "exact";
            j["d"] = ex_d;
            j["m"] = ex_m;
            j["n"] = ex_n;
            j["box"] = fam.label();
            j["probability"] = format_rational(p);
            j["probability_dec"] = format_decimal(p.get_d());
            std::cout << j.dump() << "\n";
        } else {
            std::cout << format_rational(p) << " = " << format_decimal(p.get_d()) << "\n";
        }
    } else if (*c_ident) {
        PointSet prefix = load_prefix(id_prefix, id_d);
        BoxFamily fam = parse_box_family(id_box);
        BoxSpec box = make_box(fam, id_d, 1, id_n);
        IdentityResult r = inclusion_exclusion_identity(prefix, box);
        if (id_json) {
            json j;
            j["schema_version"] = kSchemaVersion;
            j["command"] = "identity";
            j["lhs"] = format_rational(r.lhs);
            j["rhs"] = format_rational(r.rhs);
            j["equal"] = r.equal;
            j["support_bound"] = r.support_bound.get_str();
            std::cout << j.dump() << "\n";
        } else {
            std::cout << "lhs " << format_rational(r.lhs) << "\n"
                      << "rhs " << format_rational(r.rhs) << "\n"
                      << "equal " << (r.equal ? "yes" : "no") << "\n";
        }
        status = r.equal ? 0 : 1;
    } else if (*c_counts) {
        PointSet prefix = load_prefix(ct_prefix, ct_d);
        BoxFamily fam = parse_box_family(ct_box);
        BoxSpec box = make_box(fam, ct_d, 1, ct_n);
        LambdaSpec spec = make_lambda_spec(prefix, mpz_class(ct_modulus));
        CountResult cr = count_lambda_points(spec, box);
        bool covering_ok = false, covering_ran = false;
        if (ct_modulus >= 1 && ct_modulus <= ct_n) {
            covering_ran = true;
            covering_ok = check_covering_bounds(spec, box);
        }
        if (ct_json) {
            json j;
            j["schema_version"] = kSchemaVersion;
            j["command"] = "counts";
            j["modulus"] = ct_modulus;
            j["count"] = cr.count.get_str();
            j["volume"] = cr.volume.get_str();
            j["ratio"] = format_rational(cr.ratio);
            if (covering_ran) j["covering_bounds_ok"] = covering_ok;
            std::cout << j.dump() << "\n";
        } else {
            std::cout << "count  " << cr.count << "\n"
                      << "volume " << cr.volume << "\n"
                      << "ratio  " << format_rational(cr.ratio) << "\n";
            if (covering_ran)
                std::cout << "covering-bounds " << (covering_ok ? "ok" : "VIOLATED") << "\n";
        }
        if (covering_ran && !covering_ok) status = 1;
    } else if (*c_conv) {
        BoxFamily fam = parse_box_family(cv.box);
        std::vector<std::uint64_t> ns = parse_n_list(cv_nlist);
        auto rows = convergence_table(cv.d, cv.m, fam, ns, cv.trials, cv.seed, cv.workers);
        if (cv.as_json) {
            std::cout << convergence_to_json(rows) << "\n";
        } else {
            std::cout << convergence_csv_header() << "\n";
            for (const auto& r : rows) std::cout << convergence_csv_row(r) << "\n";
        }
    } else if (*c_crt) {
        BoxSpec box = crt_blind_box(crt_d, crt_n);
        if (crt_json) {
            json j;
            j["schema_version"] = kSchemaVersion;
            j["command"] = "crt-box";
            j["d"] = crt_d;
            j["n"] = crt_n;
            j["lower"] = matrix_json(box.lower);
            std::cout << j.dump() << "\n";
        } else {
            std::cout << "# crt blind box d=" << crt_d << " n=" << crt_n << "\n"
                      << format_matrix(box.lower);
        }
    }

    auto t1 = std::chrono::steady_clock::now();
    std::cerr << "wall_time_ms "
              << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()
              << "\n";
    return status;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const rank_error& e) {
        std::cerr << "rank error: " << e.what() << "\n";
        return 3;
    } catch (const size_guard_error& e) {
        std::cerr << "size guard: " << e.what() << " (limit " << e.guard_limit << ")\n";
        return 4;
    } catch (const contract_error& e) {
        std::cerr << "contract violation: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
