#include "lefschetz.hpp"
#include "lefschetz/acceptance.hpp"
#include "lefschetz/json_io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace lefschetz;
using io::json;

enum Exit : int { ok = 0, verification_failed = 1, input_error = 2, cap_exceeded = 3 };

struct Job {
    std::string command;
    std::string input;
    std::string output;
    std::size_t max_rank = 6;
    std::size_t max_dim = 400;
    unsigned jobs = 1;
};

struct Table {
    std::vector<std::string> columns;
    std::vector<json> rows;  // objects keyed by column; "origin" orders the output
    bool failed = false;
};

json read_input(const std::string& source) {
    if (source.empty()) return json::object();
    std::string text = source;
    if (source.front() != '{' && source.front() != '[') {
        std::ifstream in(source);
        if (!in) throw io::InputError("cannot open input file " + source);
        std::stringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw io::InputError(std::string("malformed JSON: ") + e.what());
    }
}

void require_rank(std::size_t m, const Job& job) {
    if (m > job.max_rank) throw CapExceeded();
}

void require_dim(const mpz_class& d, const Job& job) {
    if (d > mpz_class(std::to_string(job.max_dim))) throw CapExceeded();
}

std::vector<GLParam> params_of(const json& in) {
    std::vector<GLParam> out;
    if (in.contains("params")) {
        for (auto& p : in.at("params")) out.push_back(io::param_from(p));
    } else if (in.contains("left")) {
        out.push_back(io::param_from(in));
    }
    return out;
}

std::vector<Multisegment> multisegments_of(const json& in) {
    std::vector<Multisegment> out;
    if (in.contains("multisegments"))
        for (auto& m : in.at("multisegments")) out.push_back(io::multisegment_from(m));
    return out;
}

template <class Item, class Row>
std::vector<json> fan_out(const std::vector<Item>& items, unsigned jobs, Row row) {
    std::vector<json> rows(items.size());
    parallel_for(items.size(), jobs, [&](std::size_t i) { rows[i] = row(items[i]); });
    std::stable_sort(rows.begin(), rows.end(), [](const json& a, const json& b) { return a.at("origin") < b.at("origin"); });
    return rows;
}

Table gamma(const Job& job, const json& in) {
    const auto params = params_of(in);
    if (params.empty()) throw io::InputError("gamma expects \"params\" or a single {\"left\",\"right\"} object");
    const std::string functor = in.value("functor", std::string("standard"));
    if (functor != "standard" && functor != "irreducible") throw io::InputError("functor must be standard or irreducible");
    for (auto& p : params) {
        if (auto h = height(p)) {
            require_rank(static_cast<std::size_t>(*h), job);
            require_dim(gamma_dim(p, static_cast<std::size_t>(*h)), job);
        }
    }
    Table t;
    t.columns = {"origin", "functor", "height", "zero", "multisegment", "module_ref", "dim", "sm_character"};
    t.rows = fan_out(params, job.jobs, [&](const GLParam& p) {
        const auto h = height(p);
        json row = {{"origin", p.str()}, {"functor", functor}, {"height", h ? json(*h) : json("-inf")}};
        TransferResult r;
        if (h) {
            const auto m = static_cast<std::size_t>(*h);
            r = functor == "standard" ? gamma_standard(p, m) : gamma_irreducible(p, m);
        }
        row.update(io::to_json(r));
        row["dim"] = r.zero() ? 0 : r.module->dim;
        row["sm_character"] = r.zero() ? json::object() : io::to_json(sm_character_decompose(*r.module));
        if (r.multisegment) row["multisegment"] = r.multisegment->str();
        return row;
    });
    return t;
}

Table compose(const Job& job, const json& in) {
    std::vector<Multisegment> items = multisegments_of(in);
    for (auto& p : params_of(in))
        if (auto h = height(p)) items.push_back(from_params(sort_to_standard(p).left, sort_to_standard(p).right));
    if (items.empty()) throw io::InputError("compose expects \"multisegments\" or \"params\"");
    for (auto& ms : items) {
        require_rank(static_cast<std::size_t>(ms.total()), job);
        require_dim(multinomial_dim(ms.segments()), job);
    }
    Table t;
    t.columns = {"origin", "dim", "factors", "total_multiplicity"};
    t.rows = fan_out(items, job.jobs, [&](const Multisegment& ms) {
        HeckeModule std_mod = standard_module(ms);
        const auto table = composition_factors(std_mod);
        json factors = json::object();
        for (auto& [f, k] : table) factors[f.str()] = k;
        return json{{"origin", ms.str()}, {"dim", std_mod.dim}, {"factors", factors}, {"total_multiplicity", total_multiplicity(table)}};
    });
    return t;
}

std::vector<Multisegment> speh_grid(long max_nd) {
    std::vector<Multisegment> out;
    for (long n = 1; n <= max_nd; ++n)
        for (long d = 1; n * d <= max_nd; ++d) out.push_back(speh(n, d));
    return out;
}

Table unitarity_scan(const Job& job, const json& in) {
    std::vector<Multisegment> items = multisegments_of(in);
    if (in.contains("speh")) {
        auto grid = speh_grid(in.at("speh").value("max_nd", 6L));
        items.insert(items.end(), grid.begin(), grid.end());
    }
    if (items.empty()) throw io::InputError("unitarity-scan expects \"multisegments\" or {\"speh\": {\"max_nd\": k}}");
    for (auto& ms : items) {
        require_rank(static_cast<std::size_t>(ms.total()), job);
        require_dim(multinomial_dim(ms.segments()), job);
    }
    Table t;
    t.columns = {"origin", "dim", "solution_dim", "positive", "negative", "zero", "unitary"};
    t.rows = fan_out(items, job.jobs, [&](const Multisegment& ms) {
        HeckeModule st = simple_module(ms);
        auto form = hermitian_form(st);
        json row = {{"origin", ms.str()}, {"dim", st.dim}, {"solution_dim", form.solution_dim}, {"unitary", form.unitary}};
        row["positive"] = form.signature ? json(form.signature->positive) : json(nullptr);
        row["negative"] = form.signature ? json(form.signature->negative) : json(nullptr);
        row["zero"] = form.signature ? json(form.signature->zero) : json(nullptr);
        return row;
    });
    return t;
}

Table dirac_scan(const Job& job, const json& in) {
    const long max_nd = in.value("max_nd", 6L);
    if (max_nd < 1) throw io::InputError("max_nd must be positive");
    std::vector<std::pair<long, long>> items;
    for (long n = 1; n <= max_nd; ++n)
        for (long d = 1; n * d <= max_nd; ++d) {
            require_rank(static_cast<std::size_t>(n * d), job);
            require_dim(multinomial_dim(speh(n, d).segments()), job);
            items.emplace_back(n, d);
        }
    Table t;
    t.columns = {"origin", "n", "d", "multisegment", "twisted_elliptic", "unitary"};
    t.rows = fan_out(items, job.jobs, [&](const std::pair<long, long>& nd) {
        const Multisegment ms = speh(nd.first, nd.second);
        const auto cls = classify(ms);
        const auto form = hermitian_form(simple_module(ms));
        std::ostringstream origin;
        origin << "a(" << nd.first << "," << nd.second << ")";
        return json{{"origin", origin.str()},      {"n", nd.first},
                    {"d", nd.second},              {"multisegment", ms.str()},
                    {"twisted_elliptic", cls.is_twisted_elliptic}, {"unitary", form.unitary}};
    });
    return t;
}

Table bz(const Job& job, const json& in) {
    const auto items = multisegments_of(in);
    if (items.empty() || !in.contains("partitions")) throw io::InputError("bz expects \"multisegments\" and \"partitions\"");
    std::vector<Partition> taus;
    for (auto& p : in.at("partitions")) taus.push_back(io::partition_from(p));
    std::vector<std::pair<Multisegment, Partition>> pairs;
    for (auto& ms : items) {
        require_rank(static_cast<std::size_t>(ms.total()), job);
        require_dim(multinomial_dim(ms.segments()), job);
        for (auto& tau : taus) {
            if (tau.size() > ms.total()) throw io::InputError("partition larger than " + ms.str());
            pairs.emplace_back(ms, tau);
        }
    }
    Table t;
    t.columns = {"origin", "tau", "dim", "factors"};
    t.rows = fan_out(pairs, job.jobs, [&](const std::pair<Multisegment, Partition>& x) {
        HeckeModule d = bz_derivative(simple_module(x.first), x.second);
        json factors = json::object();
        if (d.dim)
            for (auto& [f, k] : composition_factors(d)) factors[f.str()] = k;
        return json{{"origin", x.first.str() + " " + io::partition_str(x.second)},
                    {"tau", io::partition_str(x.second)},
                    {"dim", d.dim},
                    {"factors", factors}};
    });
    return t;
}

Table verify(const Job& job) {
    Table t;
    t.columns = {"origin", "name", "status", "detail"};
    for (auto& r : acceptance::run_all(job.jobs)) {
        const std::string status = r.skipped ? "SKIP" : r.pass ? "PASS" : "FAIL";
        t.failed |= !r.pass;
        t.rows.push_back({{"origin", "criterion " + std::to_string(r.id)}, {"name", r.name}, {"status", status}, {"detail", r.detail}});
        std::cerr << acceptance::format(r) << "\n";
    }
    return t;
}

Table selftest(const Job& job, const json& in) {
    SelftestOptions opt;
    opt.max_rank = job.max_rank;
    opt.inject_fault = in.value("inject_fault", false);
    opt.seed = in.value("seed", 7u);
    const auto rep = run_selftest(opt);
    Table t;
    t.columns = {"origin", "violation"};
    t.failed = !rep.ok();
    for (auto& v : rep.violations) t.rows.push_back({{"origin", "selftest"}, {"violation", v}});
    std::cerr << "selftest: " << rep.checks << " checks, " << rep.violations.size() << " violations\n";
    return t;
}

std::string csv_field(const json& v) {
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
    return quoted + "\"";
}

void emit(const Job& job, const Table& t) {
    std::ostringstream out;
    const bool csv = job.output.size() >= 4 && job.output.substr(job.output.size() - 4) == ".csv";
    if (csv) {
        for (auto& c : t.columns) out << c << ",";
        out << "engine_version\n";
        for (auto& row : t.rows) {
            for (auto& c : t.columns) out << csv_field(row.contains(c) ? row.at(c) : json(nullptr)) << ",";
            out << io::engine_version << "\n";
        }
    } else {
        json doc = {{"engine_version", io::engine_version}, {"command", job.command}, {"rows", json::array()}};
        for (auto row : t.rows) {
            row["engine_version"] = io::engine_version;
            doc["rows"].push_back(std::move(row));
        }
        out << doc.dump(2) << "\n";
    }
    if (job.output.empty()) {
        std::cout << out.str();
        return;
    }
    std::ofstream file(job.output);
    if (!file) throw io::InputError("cannot write " + job.output);
    file << out.str();
}

int run(const Job& job) {
    const json in = read_input(job.input);
    if (!in.is_object()) throw io::InputError("input must be a JSON object");
    ScopedDimCap cap(job.max_dim);
    Table t;
    if (job.command == "gamma") t = gamma(job, in);
    else if (job.command == "compose") t = compose(job, in);
    else if (job.command == "unitarity-scan") t = unitarity_scan(job, in);
    else if (job.command == "dirac-scan") t = dirac_scan(job, in);
    else if (job.command == "bz") t = bz(job, in);
    else if (job.command == "verify") t = verify(job);
    else if (job.command == "selftest") t = selftest(job, in);
    else throw io::InputError("unknown command " + job.command);
    emit(job, t);
    return t.failed ? verification_failed : ok;
}

}  // namespace

int main(int argc, char** argv) {
    Job job;
    job.jobs = default_jobs();
    if (const char* env = std::getenv("LEFSCHETZ_CAP_DIM")) {
        try {
            job.max_dim = std::stoul(env);
        } catch (const std::exception&) {
            std::cerr << "LEFSCHETZ_CAP_DIM must be a positive integer\n";
            return input_error;
        }
    }
    CLI::App app{"Hecke-module transfers, composition tables and verification suites"};
    app.add_option("--command", job.command, "gamma | compose | unitarity-scan | dirac-scan | bz | verify | selftest")
        ->required()
        ->check(CLI::IsMember({"gamma", "compose", "unitarity-scan", "dirac-scan", "bz", "verify", "selftest"}));
    app.add_option("--input", job.input, "input file, or inline JSON");
    app.add_option("--output", job.output, "output file (.csv selects CSV); stdout when omitted");
    app.add_option("--max-rank", job.max_rank, "largest rank m built")->capture_default_str();
    app.add_option("--max-dim", job.max_dim, "largest module dimension built")->capture_default_str();
    app.add_option("--jobs", job.jobs, "worker threads")->check(CLI::PositiveNumber);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : input_error;
    }
    try {
        return run(job);
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cap_exceeded;
    } catch (const io::InputError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return input_error;
    } catch (const ContractViolation& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return input_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return verification_failed;
    }
}
