// end-to-end acceptance run: one line of output per criterion
#include <chrono>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "cpk/verify.hpp"

using namespace cpk;

namespace {

struct Gate {
    std::map<std::string, PropertyCount> by_name;
    long long assertion_failures = 0;
    int failed_criteria = 0;

    template <typename Fn>
    void collect(const char* label, Fn&& fn) {
        try {
            for (const PropertyCount& pc : fn()) {
                PropertyCount& slot = by_name[pc.name];
                slot.name = pc.name;
                slot.checked += pc.checked;
                slot.failures += pc.failures;
            }
        } catch (const internal_error& e) {
            ++assertion_failures;
            std::printf("  assertion during %s: %s\n", label, e.what());
        }
    }

    // pass iff every listed property ran at least once and never failed
    bool clean(const std::vector<std::string>& names, std::string& detail) {
        bool ok = true;
        detail.clear();
        for (const std::string& name : names) {
            auto it = by_name.find(name);
            long long checked = it == by_name.end() ? 0 : it->second.checked;
            long long failures = it == by_name.end() ? 0 : it->second.failures;
            if (checked <= 0 || failures > 0) ok = false;
            if (!detail.empty()) detail += ", ";
            detail += name + " " + std::to_string(failures) + "/" + std::to_string(checked);
        }
        return ok;
    }

    void report(int number, const char* label, bool ok, const std::string& detail) {
        std::printf("criterion %2d %-34s %s (%s)\n", number, label, ok ? "PASS" : "FAIL",
                    detail.c_str());
        if (!ok) ++failed_criteria;
    }
};

}  // namespace

int main() {
    Gate g;
    std::string detail;

    auto t0 = std::chrono::steady_clock::now();
    g.collect("fast soundness", [] { return verify_fast_soundness(1000, 400); });
    double fast_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok1 = g.clean({"fast_soundness"}, detail) && fast_seconds < 60.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, ", %.1fs", fast_seconds);
    g.report(1, "tournament kernel soundness", ok1, detail + buf);

    g.collect("fast size", [] { return verify_fast_size(2000, 500); });
    g.report(2, "tournament kernel size", g.clean({"fast_kernel_size", "fast_trace_sum"}, detail),
             detail);

    g.collect("rti soundness", [] { return verify_rti_soundness(3000, 400); });
    g.collect("rti size", [] { return verify_rti_size(3500, 500); });
    g.report(3, "triplet kernel soundness and size",
             g.clean({"rti_soundness", "rti_kernel_size", "rti_trace_sum"}, detail), detail);

    g.report(4, "reduction rules split the optimum",
             g.clean({"fast_rule_split", "rti_rule_split"}, detail), detail);

    g.collect("btw small k", [] { return verify_btw_small_k(7000, 400); });
    g.report(5, "packings never exceed the optimum",
             g.clean({"fast_packing_bound", "rti_packing_bound", "btw_packing_bound"}, detail),
             detail);

    g.collect("fast confinement", [] { return verify_fast_confinement(6000, 500); });
    g.collect("rti confinement", [] { return verify_rti_confinement(6100, 500); });
    g.collect("btw confinement", [] { return verify_btw_confinement(6200, 500); });
    g.report(6, "orderings confine disagreements",
             g.clean({"fast_confinement", "rti_confinement", "btw_confinement"}, detail), detail);

    g.report(7, "small budget betweenness solver",
             g.clean({"btw_small_k_answer", "btw_small_k_edition", "btw_kernel_answer"}, detail),
             detail);

    g.collect("btw kernel", [] { return verify_btw_kernel(8000, 500); });
    g.report(8, "betweenness kernel size",
             g.clean({"btw_kernel_size", "btw_trace_sum", "btw_trivial_canonical"}, detail), detail);

    g.collect("bipartite covers", [] { return verify_bipartite(9000, 300); });
    bool ok9 = g.clean({"konig_equality", "hall_matching"}, detail) && g.assertion_failures == 0;
    g.report(9, "cover duality and internal checks", ok9,
             detail + ", assertions " + std::to_string(g.assertion_failures));

    g.collect("characterizations", [] { return verify_characterizations(); });
    g.report(10, "exhaustive small case laws",
             g.clean({"rti_four_leaf_characterization", "btw_four_vertex_characterization",
                      "rti_span_condition", "btw_quiet_extension"},
                     detail),
             detail);

    if (g.failed_criteria == 0) {
        std::printf("acceptance: all 10 criteria pass\n");
        return 0;
    }
    std::printf("acceptance: %d criteria FAILED\n", g.failed_criteria);
    return 1;
}
