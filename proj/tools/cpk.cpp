#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cpk/instances.hpp"
#include "cpk/kernel_btw.hpp"
#include "cpk/kernel_fast.hpp"
#include "cpk/kernel_rti.hpp"
#include "cpk/oracle.hpp"
#include "cpk/verify.hpp"

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

std::string space_join(const std::vector<int>& ids) {
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(ids[i]);
    }
    return out;
}

cpk::ParamInstance read_instance(const std::string& input) {
    if (input.empty()) return cpk::parse_instance(std::cin);
    std::ifstream in(input);
    if (!in) throw std::invalid_argument("cannot read " + input);
    return cpk::parse_instance(in);
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) throw std::invalid_argument("cannot write " + path);
}

int cmd_generate(cpk::ProblemKind kind, int n, long long k, std::uint64_t seed,
                 const std::string& output) {
    cpk::PlantedInstance planted = cpk::generate_planted_with_truth(kind, n, k, seed);
    std::string text = cpk::write_instance(planted.inst);
    if (output.empty()) {
        std::cout << text;
    } else {
        write_file(output, text);
        write_file(output + ".truth", planted.truth);
    }
    return kExitYes;
}

int cmd_kernelize(const std::string& input, const std::string& output) {
    cpk::ParamInstance inst = read_instance(input);
    cpk::KernelReport rep;
    switch (inst.kind()) {
        case cpk::ProblemKind::Fast: rep = cpk::kernelize_fast(inst); break;
        case cpk::ProblemKind::Rti: rep = cpk::kernelize_rti(inst); break;
        case cpk::ProblemKind::Btw: rep = cpk::kernelize_btw(inst); break;
    }
    for (const auto& entry : rep.rule_trace) std::cerr << entry.line() << "\n";
    std::string text = cpk::write_instance(rep.reduced);
    if (output.empty())
        std::cout << text;
    else
        write_file(output, text);
    return rep.verdict == cpk::Verdict::Reduced ? kExitYes : kExitNo;
}

int cmd_solve_exact(const cpk::ParamInstance& inst) {
    cpk::ExactResult res;
    std::string witness;
    switch (inst.kind()) {
        case cpk::ProblemKind::Fast:
            res = cpk::exact_fast_dp(inst.fast());
            witness = "order " + space_join(res.order);
            break;
        case cpk::ProblemKind::Rti:
            res = cpk::exact_rti_enumerate(inst.rti());
            witness = inst.size() > 0 ? "tree " + res.tree.newick() : "";
            break;
        case cpk::ProblemKind::Btw:
            res = cpk::exact_btw_enumerate(inst.btw());
            witness = "order " + space_join(res.order);
            break;
    }
    std::cout << "optimum " << res.optimum << "\n";
    if (!witness.empty()) std::cout << witness << "\n";
    return res.optimum <= inst.k ? kExitYes : kExitNo;
}

int cmd_solve_small_k(const cpk::ParamInstance& inst) {
    if (inst.kind() != cpk::ProblemKind::Btw)
        throw std::invalid_argument("method small-k applies to BTW instances only");
    if (5 * inst.k >= inst.size())
        throw std::invalid_argument("method small-k needs 5k < n");
    cpk::SmallKResult res = cpk::solve_small_k(inst.btw(), inst.k);
    if (!res.yes) {
        std::cout << "NO\n";
        return kExitNo;
    }
    std::cout << "edition " << cpk::detail::join_triples(res.edition) << "\n";
    return kExitYes;
}

int cmd_verify(cpk::ProblemKind kind, std::uint64_t seed, long long trials) {
    std::vector<cpk::PropertyCount> counts = cpk::verify_problem(kind, seed, trials);
    bool ok = true;
    for (const auto& pc : counts) {
        std::cout << pc.name << " checked=" << pc.checked << " failures=" << pc.failures << "\n";
        ok = ok && pc.failures == 0;
    }
    std::cout << "verify: " << (ok ? "pass" : "fail") << "\n";
    return ok ? kExitYes : kExitNo;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"conflict-packing kernels for dense tournament and triplet problems"};
    app.require_subcommand(1);

    const std::map<std::string, cpk::ProblemKind> kinds{{"fast", cpk::ProblemKind::Fast},
                                                        {"rti", cpk::ProblemKind::Rti},
                                                        {"btw", cpk::ProblemKind::Btw}};
    cpk::ProblemKind problem = cpk::ProblemKind::Fast;
    int n = 0;
    long long k = 0, trials = 100;
    std::uint64_t seed = 0;
    std::string input, output, method = "exact";
    bool exact_flag = false;

    CLI::App* gen = app.add_subcommand("generate", "write a planted instance");
    gen->add_option("--problem", problem, "instance kind")
        ->required()
        ->transform(CLI::CheckedTransformer(kinds, CLI::ignore_case));
    gen->add_option("--n", n, "vertex or leaf count")->required();
    gen->add_option("--k", k, "edit budget")->required();
    gen->add_option("--seed", seed, "random seed");
    gen->add_option("--output", output, "instance file; also writes <output>.truth");

    CLI::App* ker = app.add_subcommand("kernelize", "reduce an instance");
    ker->add_option("--input", input, "instance file, standard input when absent");
    ker->add_option("--output", output, "reduced instance file, standard output when absent");

    CLI::App* sol = app.add_subcommand("solve", "solve an instance exactly");
    sol->add_option("--input", input, "instance file, standard input when absent");
    sol->add_option("--method", method, "exact or small-k")
        ->check(CLI::IsMember({"exact", "small-k"}));
    sol->add_flag("--exact", exact_flag, "force the enumeration oracle");

    CLI::App* ver = app.add_subcommand("verify", "run the property suite");
    ver->add_option("--problem", problem, "instance kind")
        ->required()
        ->transform(CLI::CheckedTransformer(kinds, CLI::ignore_case));
    ver->add_option("--trials", trials, "seeded instances per property");
    ver->add_option("--seed", seed, "base seed, trial i uses seed+i");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (gen->parsed()) return cmd_generate(problem, n, k, seed, output);
        if (ker->parsed()) return cmd_kernelize(input, output);
        if (sol->parsed()) {
            if (exact_flag && method == "small-k")
                throw std::invalid_argument("--exact conflicts with --method small-k");
            cpk::ParamInstance inst = read_instance(input);
            return method == "small-k" ? cmd_solve_small_k(inst) : cmd_solve_exact(inst);
        }
        if (ver->parsed()) {
            if (trials < 1) throw std::invalid_argument("trials must be at least 1");
            return cmd_verify(problem, seed, trials);
        }
    } catch (const cpk::internal_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const cpk::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
