#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "k3pq/errors.hpp"
#include "k3pq/minimal_model.hpp"
#include "k3pq/parallel.hpp"
#include "k3pq/serialize.hpp"
#include "k3pq/verify.hpp"

#ifndef K3PQ_TABLES_DIR
#define K3PQ_TABLES_DIR "tables"
#endif

using namespace k3pq;

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;
constexpr int kInternal = 3;

struct Common {
    std::string format = "json";
    int jobs = 0;
    std::string out;
};

struct SurfaceFlags {
    long order = 0;
    long t1 = 0;
    long t2 = 0;
    bool primitive_only = false;
};

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::invalid_argument("cannot open output file " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "tsv"}));
    app->add_option("--jobs", c.jobs, "Worker threads (default: available parallelism)")->check(CLI::NonNegativeNumber);
    app->add_option("--out", c.out, "Output file (default: stdout)");
}

void add_surface(CLI::App* app, SurfaceFlags& s) {
    app->add_option("--order", s.order, "Group order p or 2p")->required();
    app->add_option("--t1", s.t1, "Branch points of the first curve")->required();
    app->add_option("--t2", s.t2, "Branch points of the second curve")->required();
    app->add_flag("--primitive-only", s.primitive_only, "Require a 1-dimensional eigenspace of exact order n");
}

std::vector<Candidate> run_scan(const SurfaceFlags& s) {
    return scan(ScanRequest{GroupSpec::from_order(s.order), s.t1, s.t2, s.primitive_only});
}

std::vector<long> parse_rows(const std::vector<std::string>& specs) {
    std::vector<long> primes;
    for (const auto& spec : specs) {
        if (spec.rfind("p=", 0) != 0) throw std::invalid_argument("--rows expects p=N[,M...]");
        std::stringstream ss(spec.substr(2));
        std::string item;
        while (std::getline(ss, item, ',')) {
            std::size_t used = 0;
            long p = std::stol(item, &used);
            if (used != item.size()) throw std::invalid_argument("--rows expects p=N[,M...]");
            primes.push_back(p);
        }
    }
    return primes;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Product-quotient surfaces with cyclic groups and their K3 minimal models"};
    app.require_subcommand(1);

    Common common;
    long order = 0, branch_points = 0, max_branch_points = 0;
    bool primitive_only = false, all = false;
    auto* curves = app.add_subcommand("curves", "Enumerate curves with a cyclic action of order n");
    curves->add_option("--order", order, "Group order p or 2p")->required();
    auto* bp = curves->add_option("--branch-points", branch_points, "Exact number of branch points");
    auto* mbp = curves->add_option("--max-branch-points", max_branch_points, "Maximum number of branch points");
    bp->excludes(mbp);
    curves->add_flag("--primitive-only", primitive_only, "Require a 1-dimensional eigenspace of exact order n");
    curves->add_flag("--all", all, "Do not require a 1-dimensional eigenspace");
    add_common(curves, common);

    SurfaceFlags surface;
    auto* classify = app.add_subcommand("classify", "Pair curves into surfaces with pg = 1 and q = 0");
    add_surface(classify, surface);
    add_common(classify, common);

    auto* k3 = app.add_subcommand("k3", "Minimal model, K3 verdict and fixed locus");
    add_surface(k3, surface);
    add_common(k3, common);

    int table = 1;
    std::vector<std::string> rows;
    std::string tables_dir = K3PQ_TABLES_DIR;
    auto* verify = app.add_subcommand("verify", "Compare the pipeline against the tabulated families");
    verify->add_option("--table", table, "Table number")->required()->check(CLI::IsMember({1, 2}));
    verify->add_option("--rows", rows, "Restrict to rows, e.g. p=3 or p=5,7");
    verify->add_option("--tables-dir", tables_dir, "Directory holding table1.json and table2.json");
    add_common(verify, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        set_worker_count(common.jobs > 0 ? common.jobs : static_cast<int>(std::thread::hardware_concurrency()));
        Output output(common.out);
        auto& os = output.stream();
        const bool json = common.format == "json";

        if (curves->parsed()) {
            if (bp->count() == 0 && mbp->count() == 0)
                throw std::invalid_argument("one of --branch-points or --max-branch-points is required");
            EnumerationRequest req;
            req.group = GroupSpec::from_order(order);
            req.min_r = bp->count() ? branch_points : 3;
            req.max_r = bp->count() ? branch_points : max_branch_points;
            req.require_dim1 = !all;
            req.primitive_only = primitive_only;
            for (const auto& rec : enumerate_curves(req))
                os << (json ? curve_to_json(rec).dump() : curve_to_tsv(rec)) << "\n";
            return kOk;
        }
        if (classify->parsed()) {
            for (const auto& cand : run_scan(surface))
                os << (json ? candidate_to_json(cand).dump() : candidate_to_tsv(cand)) << "\n";
            return kOk;
        }
        if (k3->parsed()) {
            auto cands = run_scan(surface);
            std::vector<Candidate> selected;
            for (const auto& c : cands)
                if (c.k3_candidate) selected.push_back(c);
            std::vector<K3Report> reports(selected.size());
            parallel_for(static_cast<long>(selected.size()),
                         [&](long i) { reports[i] = run_k3_pipeline(selected[i]); });
            for (size_t i = 0; i < selected.size(); ++i) {
                if (json)
                    os << Json{{"candidate", candidate_to_json(selected[i])},
                               {"verdict", verdict_to_json(reports[i])}}
                              .dump()
                       << "\n";
                else
                    os << verdict_to_tsv(selected[i], reports[i]) << "\n";
            }
            return kOk;
        }
        if (verify->parsed()) {
            auto fixture = load_table(tables_dir + "/table" + std::to_string(table) + ".json");
            auto reports = verify_rows(fixture, parse_rows(rows));
            for (const auto& r : reports) os << (json ? row_report_to_json(r).dump() : row_report_to_tsv(r)) << "\n";
            auto s = summarize(reports);
            if (json)
                os << Json{{"summary",
                            {{"rows", reports.size()},
                             {"matched", s.matched},
                             {"mismatches", s.mismatched},
                             {"unverified", s.unverified},
                             {"quarantined", s.quarantined}}}}
                          .dump()
                   << "\n";
            else
                os << "summary\t" << reports.size() << " rows\t" << s.matched << " matched\t" << s.mismatched
                   << " mismatches\t" << s.unverified << " unverified\t" << s.quarantined << " quarantined\n";
            return s.mismatched == 0 ? kOk : kMismatch;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kUsage;
}
