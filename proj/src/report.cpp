#include "wcop/report.hpp"

#include "wcop/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace wcop {

using Json = nlohmann::ordered_json;

namespace {

const char* to_string(ProfileTrigger trigger) {
    return trigger == ProfileTrigger::ByModulusOfZ ? "ByModulusOfZ" : "ByModulusOfPhiOfZ";
}

const char* to_string(EntryState state) {
    switch (state) {
        case EntryState::Sampled: return "Sampled";
        case EntryState::VacuouslyEmpty: return "VacuouslyEmpty";
        case EntryState::Unsampled: return "Unsampled";
    }
    return "Unsampled";
}

const char* to_string(CriterionKind kind) { return kind == CriterionKind::Supremum ? "Supremum" : "LimitToZero"; }

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json profile_json(const BoundaryProfile& p) {
    Json j;
    j["trigger"] = to_string(p.trigger);
    Json points = Json::array(), states = Json::array(), bands = Json::array();
    for (std::size_t k = 0; k < p.size(); ++k) {
        const bool sampled = p.states[k] == EntryState::Sampled;
        points.push_back(Json::array({p.thresholds[k], sampled ? number_or_null(p.values[k]) : Json(nullptr)}));
        bands.push_back(sampled ? number_or_null(p.band_maxima[k]) : Json(nullptr));
        states.push_back(to_string(p.states[k]));
    }
    j["points"] = points;
    j["bandMaxima"] = bands;
    j["states"] = states;
    return j;
}

Json verdict_json(const Verdict& v) {
    Json j;
    j["quantity"] = v.quantity;
    j["kind"] = to_string(v.kind);
    j["status"] = to_string(v.status);
    j["supEstimate"] = v.sup_estimate ? number_or_null(*v.sup_estimate) : Json("Divergent");
    j["divergenceSlope"] = number_or_null(v.divergence_slope);
    j["vacuous"] = v.vacuous;
    j["notes"] = v.notes;
    j["profile"] = profile_json(v.profile);
    return j;
}

Json sweep_json(const SweepTrend& s) {
    Json j;
    j["trend"] = to_string(s.trend);
    Json rows = Json::array();
    for (std::size_t i = 0; i < s.depths.size(); ++i) {
        Json row;
        row["k"] = s.depths[i];
        row["point"] = complex_json(s.points[i]);
        row["member"] = number_or_null(s.member_values[i]);
        row["value"] = number_or_null(s.values[i]);
        rows.push_back(row);
    }
    j["values"] = rows;
    return j;
}

Json probe_json(const CompactnessProbe& p) {
    Json j;
    j["evidence"] = to_string(p.evidence);
    Json seqs = Json::array();
    for (const auto& s : p.sequences) {
        Json sj;
        sj["name"] = s.name;
        Json rows = Json::array();
        for (std::size_t i = 0; i < s.depths.size(); ++i) {
            Json row;
            row["k"] = s.depths[i];
            row["point"] = complex_json(s.points[i]);
            row["f"] = number_or_null(s.f_values[i]);
            row["g"] = number_or_null(s.g_values[i]);
            rows.push_back(row);
        }
        sj["values"] = rows;
        seqs.push_back(sj);
    }
    j["sequences"] = seqs;
    return j;
}

Json constants_json(const EmpiricalConstants& c) {
    Json j;
    Json members = Json::array();
    for (const auto& m : c.members) {
        Json mj;
        mj["function"] = m.name;
        mj["norm"] = number_or_null(m.envelopes.norm);
        mj["derivativeFormNorm"] = number_or_null(m.derivative_norm);
        mj["normRatio"] = number_or_null(m.norm_ratio);
        mj["growthEnvelope"] = number_or_null(m.envelopes.growth);
        mj["derivativeGrowthEnvelope"] = number_or_null(m.envelopes.derivative_growth);
        members.push_back(mj);
    }
    j["battery"] = members;
    j["growthEnvelopeMax"] = number_or_null(c.growth_max);
    j["derivativeGrowthEnvelopeMax"] = number_or_null(c.derivative_growth_max);
    j["normRatioInterval"] = Json::array({number_or_null(c.norm_ratio_min), number_or_null(c.norm_ratio_max)});
    return j;
}

Json equivalence_json(const EquivalenceProbe& p) {
    Json j;
    j["name"] = p.name;
    j["lhs"] = to_string(p.lhs_status);
    j["rhs"] = to_string(p.rhs_status);
    j["decided"] = p.decided;
    j["agree"] = p.agree;
    Json parts = Json::array();
    parts.push_back(verdict_json(p.lhs));
    for (const auto& v : p.rhs) parts.push_back(verdict_json(v));
    j["verdicts"] = parts;
    return j;
}

Json space_json(const SpaceSpec& space) {
    Json j;
    j["p"] = space.p;
    j["weight"]["alpha"] = space.weight.alpha();
    j["weight"]["logExponent"] = space.weight.log_exponent();
    j["weight"]["s"] = space.weight.s();
    j["weight"]["t"] = space.weight.t();
    return j;
}

bool trend_matches(VerdictStatus status, Trend trend) {
    return (status == VerdictStatus::Holds && trend == Trend::Stabilizing) ||
           (status == VerdictStatus::Fails && trend == Trend::Diverging);
}

bool evidence_matches(VerdictStatus status, ProbeEvidence evidence) {
    if (status == VerdictStatus::Holds)
        return evidence == ProbeEvidence::Compact || evidence == ProbeEvidence::VacuouslyCompact;
    return evidence == ProbeEvidence::NonCompact;
}

void cross_check(Report& report) {
    const TaskResult* oracle = report.find(Task::Oracle);
    if (oracle && oracle->oracle) {
        const auto& o = *oracle->oracle;
        if (const TaskResult* b = report.find(Task::BoundedBloch); b && b->classification) {
            const VerdictStatus s = b->classification->overall;
            if (s != VerdictStatus::Inconclusive) {
                const std::string what = std::string("bounded_bloch ") + to_string(s) + " vs lower-bound trend " +
                                         to_string(o.lower_bound.trend);
                if (o.lower_bound.trend == Trend::Undetermined) report.uncorroborated.push_back(what);
                else if (!trend_matches(s, o.lower_bound.trend)) report.disagreements.push_back(what);
            }
        }
        if (const TaskResult* c = report.find(Task::CompactBloch); c && c->classification) {
            const VerdictStatus s = c->classification->overall;
            if (s != VerdictStatus::Inconclusive) {
                const std::string what = std::string("compact_bloch ") + to_string(s) + " vs compactness probe " +
                                         to_string(o.compactness.evidence);
                if (o.compactness.evidence == ProbeEvidence::Undetermined) report.uncorroborated.push_back(what);
                else if (!evidence_matches(s, o.compactness.evidence)) report.disagreements.push_back(what);
            }
        }
    }
    if (const TaskResult* l = report.find(Task::LemmaProbes)) {
        for (const auto& p : l->probes) {
            if (p.decided && !p.agree)
                report.disagreements.push_back(p.name + ": " + to_string(p.lhs_status) + " vs " +
                                               to_string(p.rhs_status));
        }
    }
}

std::string csv_number(double v) {
    if (!std::isfinite(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content,
                std::vector<std::filesystem::path>& written) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write failed for " + path.string());
    written.push_back(path);
}

std::string profile_csv(const BoundaryProfile& p) {
    std::string s = "delta,value\n";
    for (std::size_t k = 0; k < p.size(); ++k) {
        const double v = p.states[k] == EntryState::Sampled ? p.values[k] : std::nan("");
        s += csv_number(p.thresholds[k]) + "," + csv_number(v) + "\n";
    }
    return s;
}

}  // namespace

const TaskResult* Report::find(Task task) const {
    for (const auto& t : tasks)
        if (t.task == task) return &t;
    return nullptr;
}

Report run(const RunConfig& config, Execution exec) {
    using Clock = std::chrono::steady_clock;
    const auto start = Clock::now();
    Report report;
    report.config = config;
    CriteriaOptions options;
    options.force_boundary_analysis = config.force_boundary_analysis;
    options.exec = exec;
    NormOptions norm_options;
    norm_options.exec = exec;
    const auto& sym = config.symbol;
    const auto& space = config.space;
    const auto& grid = config.grid;

    std::optional<Classification> bounded;
    for (Task task : config.tasks) {
        const auto task_start = Clock::now();
        TaskResult result;
        result.task = task;
        try {
            switch (task) {
                case Task::BoundedBloch:
                    bounded = classify_bounded_into_bloch(sym, space, grid, options);
                    result.classification = bounded;
                    break;
                case Task::CompactBloch:
                    if (!bounded) bounded = classify_bounded_into_bloch(sym, space, grid, options);
                    try {
                        result.classification = classify_compact_into_bloch(sym, space, grid, *bounded, options);
                    } catch (const PreconditionUnmet& e) {
                        result.refused = e.what();
                    }
                    break;
                case Task::BoundedLittleBloch:
                    if (!bounded) bounded = classify_bounded_into_bloch(sym, space, grid, options);
                    result.classification = classify_bounded_into_little_bloch(sym, space, grid, *bounded, options);
                    break;
                case Task::CompactLittleBloch:
                    result.classification = classify_compact_into_little_bloch(sym, space, grid, options);
                    break;
                case Task::LemmaProbes:
                    result.probes.push_back(limit_equivalence_q1(sym, space, grid, options));
                    result.probes.push_back(limit_equivalence_q2(sym, space, grid, options));
                    break;
                case Task::Oracle: {
                    OracleResult o;
                    o.lower_bound = matched_lower_bound_sweep(sym, space, grid, norm_options);
                    o.compactness = compactness_probe(sym, space, grid, norm_options);
                    o.constants = measure_empirical_constants(space, grid, norm_options);
                    if (bounded && bounded->holds()) {
                        const double a = bounded->parts[0].sup_estimate.value_or(0.0);
                        const double b = bounded->parts[1].sup_estimate.value_or(0.0);
                        o.chain_constant = chain_constant(sym, space, a, b, grid, norm_options);
                    }
                    result.oracle = std::move(o);
                    break;
                }
            }
        } catch (const std::exception& e) {
            throw std::runtime_error(std::string("task ") + to_string(task) + ": " + e.what());
        }
        result.seconds = std::chrono::duration<double>(Clock::now() - task_start).count();
        report.tasks.push_back(std::move(result));
    }
    cross_check(report);
    report.total_seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return report;
}

Json report_json(const Report& report) {
    Json j;
    j["tool"]["name"] = "wcop";
    j["tool"]["version"] = kToolVersion;
    j["config"] = report.config.echo;
    j["space"] = space_json(report.config.space);
    j["phiSupNormEstimate"] = report.config.symbol.phi.sup_norm_estimate();
    Json tasks = Json::array();
    for (const auto& t : report.tasks) {
        Json tj;
        tj["task"] = to_string(t.task);
        if (t.classification) {
            tj["overall"] = to_string(t.classification->overall);
            Json parts = Json::array();
            for (const auto& v : t.classification->parts) parts.push_back(verdict_json(v));
            tj["verdicts"] = parts;
        } else if (!t.refused.empty()) {
            tj["overall"] = "Refused";
            tj["reason"] = t.refused;
        }
        if (t.task == Task::LemmaProbes) {
            Json probes = Json::array();
            for (const auto& p : t.probes) probes.push_back(equivalence_json(p));
            tj["probes"] = probes;
        }
        if (t.oracle) {
            tj["lowerBound"] = sweep_json(t.oracle->lower_bound);
            tj["compactnessProbe"] = probe_json(t.oracle->compactness);
            tj["empiricalConstants"] = constants_json(t.oracle->constants);
            tj["chainConstant"] = t.oracle->chain_constant ? number_or_null(*t.oracle->chain_constant) : Json(nullptr);
        }
        tasks.push_back(tj);
    }
    j["tasks"] = tasks;
    j["disagreements"] = report.disagreements;
    j["uncorroborated"] = report.uncorroborated;
    return j;
}

Json metadata_json(const Report& report) {
    Json j;
    j["tool"] = "wcop";
    j["version"] = kToolVersion;
    j["name"] = report.config.name;
    Json timings = Json::array();
    for (const auto& t : report.tasks) {
        Json tj;
        tj["task"] = to_string(t.task);
        tj["seconds"] = t.seconds;
        timings.push_back(tj);
    }
    j["tasks"] = timings;
    j["totalSeconds"] = report.total_seconds;
    return j;
}

std::vector<std::filesystem::path> emit(const Report& report, const std::filesystem::path& dir,
                                        const std::vector<std::string>& formats) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    auto wants = [&](const char* f) { return std::find(formats.begin(), formats.end(), f) != formats.end(); };
    if (wants("json")) {
        write_file(dir / "report.json", report_json(report).dump(2) + "\n", written);
        write_file(dir / "run_metadata.json", metadata_json(report).dump(2) + "\n", written);
    }
    if (wants("csv")) {
        std::string summary = "task,quantity,status,supEstimate,slope\n";
        auto add_row = [&](const std::string& task, const Verdict& v) {
            summary += task + "," + v.quantity + "," + to_string(v.status) + "," +
                       (v.sup_estimate ? csv_number(*v.sup_estimate) : std::string("Divergent")) + "," +
                       csv_number(v.divergence_slope) + "\n";
        };
        for (const auto& t : report.tasks) {
            const std::string task = to_string(t.task);
            if (t.classification) {
                for (const auto& v : t.classification->parts) {
                    add_row(task, v);
                    write_file(dir / ("profile_" + task + "_" + v.quantity + ".csv"), profile_csv(v.profile), written);
                }
                summary += task + ",overall," + to_string(t.classification->overall) + ",,\n";
            } else if (!t.refused.empty()) {
                summary += task + ",overall,Refused,,\n";
            }
            for (const auto& p : t.probes) {
                std::vector<const Verdict*> all{&p.lhs};
                for (const auto& v : p.rhs) all.push_back(&v);
                for (const Verdict* v : all) {
                    add_row(task, *v);
                    write_file(dir / ("profile_" + task + "_" + p.name + "_" + v->quantity + ".csv"),
                               profile_csv(v->profile), written);
                }
            }
            if (t.oracle) {
                std::string lb = "k,value\n";
                for (std::size_t i = 0; i < t.oracle->lower_bound.depths.size(); ++i)
                    lb += std::to_string(t.oracle->lower_bound.depths[i]) + "," +
                          csv_number(t.oracle->lower_bound.values[i]) + "\n";
                write_file(dir / "oracle_lower_bound.csv", lb, written);
                for (const auto& s : t.oracle->compactness.sequences) {
                    std::string f = "k,value\n", g = "k,value\n";
                    for (std::size_t i = 0; i < s.depths.size(); ++i) {
                        f += std::to_string(s.depths[i]) + "," + csv_number(s.f_values[i]) + "\n";
                        g += std::to_string(s.depths[i]) + "," + csv_number(s.g_values[i]) + "\n";
                    }
                    write_file(dir / ("oracle_probe_" + s.name + "_f.csv"), f, written);
                    write_file(dir / ("oracle_probe_" + s.name + "_g.csv"), g, written);
                }
            }
        }
        write_file(dir / "verdicts.csv", summary, written);
    }
    return written;
}

int exit_code(const Report& report, bool strict) { return strict && !report.disagreements.empty() ? 3 : 0; }

}  // namespace wcop
