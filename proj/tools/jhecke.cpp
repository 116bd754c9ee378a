// SPDX-License-Identifier: MIT
// jhecke: build Jacobi form coefficient tables, apply Hecke-Jacobi operators and
// check the Hecke duality relation from the command line.
//
// Exit codes: 0 success, 1 mathematical failure, 2 usage error.
#include "jh/closed_forms.hpp"
#include "jh/constructors.hpp"
#include "jh/duality.hpp"
#include "jh/io.hpp"
#include "jh/operators.hpp"
#include "jh/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace jh;
using ojson = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Relative output paths land in $JACOBI_OUT_DIR when it is set.
std::string resolve_out(const std::string& path) {
    namespace fs = std::filesystem;
    const char* dir = std::getenv("JACOBI_OUT_DIR");
    if (path.empty() || !dir || fs::path(path).is_absolute()) return path;
    fs::create_directories(dir);
    return (fs::path(dir) / path).string();
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(resolve_out(out));
    if (!f) throw UsageError("cannot write " + out);
    f << text;
}

void emit_json(const ojson& j, const std::string& out) { emit(j.dump(1) + "\n", out); }

void emit_table(const CoeffTable& t, const std::string& out, bool csv) {
    if (!csv) return emit(dump_table(t), out);
    std::ostringstream os;
    write_table_csv(os, t);
    emit(os.str(), out);
}

CoeffTable load_input(const std::string& path) {
    if (!std::filesystem::exists(path)) throw UsageError("input file not found: " + path);
    try {
        return read_table_file(path);
    } catch (const std::exception& e) {
        throw UsageError(std::string("cannot read table: ") + e.what());
    }
}

void require_degree(const CoeffTable& t, int degree, const std::string& verb) {
    if (t.degree() != degree)
        throw UsageError(verb + " needs a degree-" + std::to_string(degree) + " table, got degree " +
                         std::to_string(t.degree()));
}

void require_prime(i64 p) {
    if (p < 2 || !is_prime(p)) throw UsageError("--p must be a prime, got " + std::to_string(p));
}

InvKey2 parse_key(const std::string& s) {
    std::vector<i64> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            v.push_back(std::stoll(item));
        } catch (...) {
            throw UsageError("--key expects D1,D2,D,r1,r2");
        }
    }
    if (v.size() != 5) throw UsageError("--key expects D1,D2,D,r1,r2");
    return {v[0], v[1], v[2], v[3], v[4]};
}

ojson defect_json(const DefectReport& d) {
    ojson j;
    j["key"] = key_json(d.key);
    j["defect"] = to_string(d.defect);
    auto lk = ojson::array();
    for (const auto& [k, l] : d.lookups)
        lk.push_back({{"key", key_json(k)}, {"value", l.known() ? ojson(to_string(l.value)) : ojson(nullptr)}});
    j["lookups"] = lk;
    return j;
}

ojson matrix_json(const RatMat& m) {
    auto rows = ojson::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto row = ojson::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

ojson element_json(const JacobiElement& e) {
    return {{"g", matrix_json(e.g)}, {"lam", matrix_json(e.lam)}, {"mu", matrix_json(e.mu)}, {"kappa", to_string(e.kappa)}};
}

// Operator named by --op; the oracle bound is what the coset sum can certify.
struct OpChoice {
    std::string name;  // up, down, tj1, x or a package id
    std::optional<PackageId> pkg;
};

OpChoice parse_op(const std::string& op) {
    if (op == "up" || op == "down" || op == "tj1" || op == "x") return {op, std::nullopt};
    if (op.rfind("package:", 0) == 0) {
        auto id = parse_package_id(op.substr(8));
        if (id) return {op.substr(8), id};
    }
    throw UsageError("--op must be up, down, tj1, x or package:N1..N3|M1..M12, got '" + op + "'");
}

CoeffTable run_oracle(const CoeffTable& t, const OpChoice& op, i64 p) {
    if (op.name == "up") return op_up(t, p);
    if (op.name == "down") return op_down(t, p);
    if (op.name == "tj1") return op_TJ1(t, p);
    if (op.name == "x") return op_X(t, p);
    if (is_degree1(*op.pkg)) return apply_package(t, package(*op.pkg, p), heisenberg_set(1, p), Embed::none, 1);
    return op_package2(t, *op.pkg, p);
}

i64 oracle_bound(const CoeffTable& t, const OpChoice& op, i64 p) {
    if (op.name == "up") return hecke_slash_sum(p, Embed::up).output_bound(t.bound());
    if (op.name == "down") return hecke_slash_sum(p, Embed::down).output_bound(t.bound());
    if (op.name == "tj1") return hecke_slash_sum(p, Embed::none).output_bound(t.bound());
    if (op.name == "x") return SlashSum(1, double_coset_X(p)).output_bound(t.bound());
    const std::size_t n = is_degree1(*op.pkg) ? 1 : 2;
    return SlashSum::product(n, package(*op.pkg, p).elements, heisenberg_set(n, p), Embed::none)
        .output_bound(t.bound());
}

bool has_closed_form(const std::string& id) {
    for (const auto& c : closed_form_ids())
        if (c == id) return true;
    return false;
}

int cmd_theta(const std::string& lattice, const std::string& file, int v_norm, int degree, i64 bound,
              const std::string& out, bool csv) {
    if (degree != 1 && degree != 2) throw UsageError("--degree must be 1 or 2");
    if (v_norm != 2 && v_norm != 4) throw UsageError("--v-norm must be 2 or 4");
    if (bound < 0) throw UsageError("--bound must be non-negative");
    Lattice L;
    if (lattice == "e8") {
        L = e8_lattice(v_norm);
    } else if (lattice == "e8e8") {
        L = e8e8_lattice(v_norm);
    } else if (lattice == "file") {
        if (file.empty()) throw UsageError("--lattice file needs --lattice-file");
        std::ifstream in(file);
        if (!in) throw UsageError("cannot read " + file);
        try {
            L = lattice_from_json(nlohmann::json::parse(in));
        } catch (const nlohmann::json::exception& e) {
            throw UsageError(std::string("malformed lattice file: ") + e.what());
        }
    } else {
        throw UsageError("--lattice must be e8, e8e8 or file");
    }
    emit_table(theta_table(L, degree, bound), out, csv);
    return 0;
}

int cmd_apply(const std::string& in, const std::string& opname, i64 p, const std::string& mode, const std::string& out,
              bool csv) {
    require_prime(p);
    OpChoice op = parse_op(opname);
    if (mode != "oracle" && mode != "closed") throw UsageError("--mode must be oracle or closed");
    CoeffTable t = load_input(in);
    const bool deg1 = op.name == "tj1" || op.name == "x" || (op.pkg && is_degree1(*op.pkg));
    require_degree(t, deg1 ? 1 : 2, "apply --op " + opname);
    const bool closed = has_closed_form(op.name);
    if (mode == "closed" && !closed) throw UsageError("no closed form for --op " + opname);
    if (closed && (p == 2 || gcd(p, 2 * t.index()) != 1))
        throw UsageError("closed forms need an odd prime p with gcd(p, 2m) = 1");

    // Both modes report the region common to the two engines, so their files agree byte for byte.
    i64 B = oracle_bound(t, op, p);
    if (closed) B = std::min(B, closed_form_bound(closed_form_shape(op.name, p), t.bound()));
    if (B < 0) throw SlashError("RegionExhausted", "the output validity region is empty");
    CoeffTable r = mode == "oracle" ? run_oracle(t, op, p)
                   : op.name == "up"   ? closed_up(t, p)
                   : op.name == "down" ? closed_down(t, p)
                                       : closed_package(t, op.name, p);
    emit_table(r.restrict_bound(std::min(B, r.bound())), out, csv);
    return 0;
}

int cmd_defect(const std::string& in, i64 p, const std::string& key, bool all, const std::string& out) {
    require_prime(p);
    if (key.empty() == !all) throw UsageError("defect needs exactly one of --key or --all");
    CoeffTable t = load_input(in);
    require_degree(t, 2, "defect");
    if (p == 2 || gcd(p, 2 * t.index()) != 1) throw UsageError("defect needs an odd prime p with gcd(p, 2m) = 1");
    if (!all) {
        InvKey2 K = parse_key(key);
        auto d = defect(t, p, K);
        emit_json(d ? defect_json(*d) : ojson{{"key", key_json(K)}, {"defect", nullptr}, {"reason", "undetermined"}},
                  out);
        return 0;
    }
    auto arr = ojson::array();
    for (const auto& K : supported_keys2(t.index(), t.bound()))
        if (auto d = defect(t, p, K)) arr.push_back({{"key", key_json(K)}, {"defect", to_string(d->defect)}});
    emit_json(arr, out);
    return 0;
}

int cmd_membership(const std::string& in, i64 p, const std::string& out) {
    require_prime(p);
    CoeffTable t = load_input(in);
    require_degree(t, 2, "membership");
    if (p == 2 || gcd(p, 2 * t.index()) != 1) throw UsageError("membership needs an odd prime p with gcd(p, 2m) = 1");
    auto r = membership(t, p);
    ojson j{{"p", p}, {"status", to_string(r.status)}, {"checked_keys", r.checked}};
    j["witness"] = r.witness ? key_json(*r.witness) : ojson(nullptr);
    if (r.witness) j["defect"] = to_string(r.witness_defect);
    emit_json(j, out);
    if (r.status == MembershipStatus::non_member) {
        std::cerr << "jhecke: not a member: defect " << to_string(r.witness_defect) << " at " << j["witness"].dump()
                  << "\n";
        return 1;
    }
    return 0;
}

int cmd_solve(int k, i64 m, i64 p, i64 bound, const std::string& out) {
    require_prime(p);
    if (k < 1 || m < 1 || bound < 0) throw UsageError("solve needs k >= 1, m >= 1, bound >= 0");
    if (p == 2 || gcd(p, 2 * m) != 1) throw UsageError("solve needs an odd prime p with gcd(p, 2m) = 1");
    DualitySpace S = solve_duality_space_classes(k, m, p, bound);
    ojson summary{{"k", k},
                  {"m", m},
                  {"p", p},
                  {"bound", bound},
                  {"classes", S.classes->size()},
                  {"equations", S.equations},
                  {"constrained_classes", S.constrained_classes},
                  {"largest_component", S.largest_component},
                  {"dimension", S.basis.size()}};
    if (out.empty()) {
        emit_json(summary, "");
        return 0;
    }
    // Each basis vector lists (class representative, value); other keys follow by GL2 invariance.
    auto basis = ojson::array();
    for (const auto& v : S.basis) {
        auto vec = ojson::array();
        for (const auto& [id, c] : v) vec.push_back({key_json(S.classes->rep(id)), to_string(c)});
        basis.push_back(vec);
    }
    summary["basis"] = basis;
    emit_json(summary, out);
    return 0;
}

int cmd_verify(const std::string& suite, const SuiteParams& sp, const std::string& out) {
    std::vector<std::string> names;
    if (suite == "all") {
        names = suite_names();
    } else {
        for (const auto& n : suite_names())
            if (n == suite) names.push_back(n);
        if (names.empty()) throw UsageError("--suite must be theorem1, theorem2, oracle, numeric, crosscheck or all");
    }
    bool ok = true;
    auto reports = ojson::array();
    for (const auto& n : names) {
        HarnessReport r = run_suite(n, sp);
        ok = ok && r.passed();
        reports.push_back(r.to_json());
        std::cerr << n << ": " << r.status << "\n";
    }
    emit_json(names.size() == 1 ? reports[0] : reports, out);
    return ok ? 0 : 1;
}

int cmd_restrict(const std::string& in, const std::string& out) {
    CoeffTable t = load_input(in);
    require_degree(t, 2, "restrict");
    auto arr = ojson::array();
    for (const auto& [k, v] : restrict_diagonal(t))
        arr.push_back({{"n1", k.first.n}, {"r1", k.first.r}, {"n2", k.second.n}, {"r2", k.second.r}, {"c", to_string(v)}});
    emit_json({{"index", t.index()}, {"weight", t.weight()}, {"entries", arr}}, out);
    return 0;
}

int cmd_dump_cosets(const std::string& id, i64 p, const std::string& out) {
    require_prime(p);
    auto arr = ojson::array();
    ojson j{{"package", id}, {"p", p}};
    if (id == "X") {
        for (const auto& e : double_coset_X(p)) arr.push_back(element_json(e));
    } else {
        auto pid = parse_package_id(id);
        if (!pid) throw UsageError("--package must be N1..N3, M1..M12 or X");
        if (!is_degree1(*pid) && p == 2) throw UsageError("degree-2 packages need an odd prime");
        auto pk = package(*pid, p);
        for (const auto& g : pk.elements) arr.push_back(matrix_json(g));
        j["expected_size"] = pk.expected_size;
    }
    j["size"] = arr.size();
    j["elements"] = arr;
    emit_json(j, out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Jacobi forms of degree two: coefficient tables, Hecke-Jacobi operators, Hecke duality"};
    app.require_subcommand(1);
    std::size_t jobs = 1;
    app.add_option("--jobs", jobs, "worker threads for coset sums")->check(CLI::PositiveNumber);

    std::string in, out, lattice = "e8", lattice_file, op, mode = "oracle", key, suite, pkg;
    int v_norm = 2, degree = 2, weight = 4, k = 4;
    i64 bound = 40, p = 3, m = 1;
    bool csv = false, all = false;
    SuiteParams sp;

    auto* theta = app.add_subcommand("theta", "theta series of a lattice with a marked vector");
    theta->add_option("--lattice", lattice, "e8, e8e8 or file");
    theta->add_option("--lattice-file", lattice_file, "JSON lattice for --lattice file");
    theta->add_option("--v-norm", v_norm, "norm of the marked vector (2 or 4)");
    theta->add_option("--degree", degree, "1 or 2");
    theta->add_option("--bound", bound, "validity bound on |D1|, |D2|");
    theta->add_option("--out", out, "output path, relative to JACOBI_OUT_DIR if set");
    theta->add_flag("--csv", csv, "write CSV instead of JSON");

    auto* eis = app.add_subcommand("eisenstein1", "degree-1 Jacobi Eisenstein series of index 1");
    eis->add_option("--weight", weight)->required();
    eis->add_option("--bound", bound);
    eis->add_option("--out", out, "output path, relative to JACOBI_OUT_DIR if set");
    eis->add_flag("--csv", csv, "write CSV instead of JSON");

    auto* apply = app.add_subcommand("apply", "apply a Hecke-Jacobi operator to a table");
    apply->add_option("--in", in)->required();
    apply->add_option("--op", op, "up, down, tj1, x or package:ID")->required();
    apply->add_option("--p", p);
    apply->add_option("--mode", mode, "oracle or closed");
    apply->add_option("--out", out, "output path, relative to JACOBI_OUT_DIR if set");
    apply->add_flag("--csv", csv, "write CSV instead of JSON");

    auto* def = app.add_subcommand("defect", "defect of the Hecke duality relation");
    def->add_option("--in", in)->required();
    def->add_option("--p", p);
    def->add_option("--key", key, "D1,D2,D,r1,r2");
    def->add_flag("--all", all);
    def->add_option("--out", out, "output path, relative to JACOBI_OUT_DIR if set");

    auto* mem = app.add_subcommand("membership", "decide membership on the determinable region");
    mem->add_option("--in", in)->required();
    mem->add_option("--p", p);
    mem->add_option("--out", out, "output path, relative to JACOBI_OUT_DIR if set");

    auto* solve = app.add_subcommand("solve", "solution space of the duality relation on a box");
    solve->add_option("--k", k);
    solve->add_option("--m", m);
    solve->add_option("--p", p);
    solve->add_option("--bound", bound);
    solve->add_option("--out", out, "also write the basis");

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", suite, "theorem1, theorem2, oracle, numeric, crosscheck or all")->required();
    verify->add_option("--p", sp.p, "operator prime");
    verify->add_option("--q", sp.q, "duality prime");
    verify->add_option("--k", sp.k);
    verify->add_option("--m", sp.m);
    verify->add_option("--bound", sp.bound, "0 selects the suite default");
    verify->add_option("--lattice", sp.lattice);
    verify->add_option("--v-norm", sp.v_norm);
    verify->add_option("--samples", sp.samples);
    verify->add_option("--seed", sp.seed);
    verify->add_option("--out", out, "output path, relative to JACOBI_OUT_DIR if set");

    auto* restrict = app.add_subcommand("restrict", "pullback to the diagonal u = 0");
    restrict->add_option("--in", in)->required();
    restrict->add_option("--out", out, "output path, relative to JACOBI_OUT_DIR if set");

    auto* dump = app.add_subcommand("dump-cosets", "coset representatives of a package");
    dump->add_option("--package", pkg, "N1..N3, M1..M12 or X")->required();
    dump->add_option("--p", p);
    dump->add_option("--out", out, "output path, relative to JACOBI_OUT_DIR if set");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    set_slash_jobs(jobs);

    try {
        if (*theta) return cmd_theta(lattice, lattice_file, v_norm, degree, bound, out, csv);
        if (*eis) {
            if (weight < 4 || weight % 2) throw UsageError("--weight must be even and at least 4");
            if (bound < 0) throw UsageError("--bound must be non-negative");
            emit_table(eisenstein1(weight, bound), out, csv);
            return 0;
        }
        if (*apply) return cmd_apply(in, op, p, mode, out, csv);
        if (*def) return cmd_defect(in, p, key, all, out);
        if (*mem) return cmd_membership(in, p, out);
        if (*solve) return cmd_solve(k, m, p, bound, out);
        if (*verify) return cmd_verify(suite, sp, out);
        if (*restrict) return cmd_restrict(in, out);
        if (*dump) return cmd_dump_cosets(pkg, p, out);
    } catch (const UsageError& e) {
        std::cerr << "jhecke: usage: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "jhecke: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
