#include "nsf/nsf.h"

#include <cstring>
#include <exception>
#include <string>

#include "json.hpp"
#include "nsf/errors.hpp"
#include "nsf/scenario.hpp"

struct nsf_scenario {
    nsf::ScenarioConfig cfg;
};

struct nsf_result {
    nsf::ScenarioResult res;
};

namespace {

using json = nlohmann::ordered_json;

thread_local std::string g_last_error;

nsf_status fail(nsf_status code, const std::string& msg)
{
    g_last_error = msg;
    return code;
}

template <class F>
nsf_status guarded(F&& body)
{
    try {
        g_last_error.clear();
        body();
        return NSF_OK;
    } catch (const nsf::ValidationError& e) {
        return fail(NSF_ERR_VALIDATION, e.what());
    } catch (const nsf::NumericalError& e) {
        return fail(NSF_ERR_NUMERICAL, e.what());
    } catch (const nsf::IoError& e) {
        return fail(NSF_ERR_IO, e.what());
    } catch (const std::bad_alloc&) {
        return fail(NSF_ERR_NUMERICAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(NSF_ERR_NUMERICAL, e.what());
    }
}

char* dup(const std::string& s)
{
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

json summary_json(const nsf::ScenarioSummary& s)
{
    json j;
    const auto& names = nsf::summary_field_names();
    const auto values = nsf::summary_values(s);
    for (std::size_t i = 0; i < names.size(); ++i) {
        const std::string& v = values[i];
        if (names[i] == "boundary")
            j[names[i]] = v;
        else if (v == "true" || v == "false")
            j[names[i]] = v == "true";
        else
            j[names[i]] = std::stod(v);
    }
    return j;
}

} // namespace

extern "C" {

const char* nsf_last_error(void)
{
    return g_last_error.c_str();
}

void nsf_string_free(char* s)
{
    delete[] s;
}

nsf_status nsf_scenario_default(nsf_scenario** out)
{
    if (!out)
        return fail(NSF_ERR_ARGUMENT, "null output handle");
    return guarded([&] { *out = new nsf_scenario{}; });
}

nsf_status nsf_scenario_load(const char* path, nsf_scenario** out)
{
    if (!path || !out)
        return fail(NSF_ERR_ARGUMENT, "null argument");
    return guarded([&] { *out = new nsf_scenario{nsf::load_config(path)}; });
}

nsf_status nsf_scenario_parse(const char* text, nsf_scenario** out)
{
    if (!text || !out)
        return fail(NSF_ERR_ARGUMENT, "null argument");
    return guarded([&] { *out = new nsf_scenario{nsf::parse_config(text)}; });
}

nsf_status nsf_scenario_set(nsf_scenario* s, const char* key, const char* value)
{
    if (!s || !key || !value)
        return fail(NSF_ERR_ARGUMENT, "null argument");
    return guarded([&] { nsf::set_config_value(s->cfg, key, value); });
}

nsf_status nsf_scenario_override(nsf_scenario* s, const char* assignment)
{
    if (!s || !assignment)
        return fail(NSF_ERR_ARGUMENT, "null argument");
    return guarded([&] { nsf::apply_override(s->cfg, assignment); });
}

nsf_status nsf_scenario_validate(const nsf_scenario* s)
{
    if (!s)
        return fail(NSF_ERR_ARGUMENT, "null scenario");
    return guarded([&] { nsf::validate_config(s->cfg); });
}

void nsf_scenario_free(nsf_scenario* s)
{
    delete s;
}

nsf_status nsf_run(const nsf_scenario* s, nsf_result** out)
{
    if (!s || !out)
        return fail(NSF_ERR_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&] { *out = new nsf_result{nsf::run_scenario(s->cfg)}; });
}

size_t nsf_result_record_count(const nsf_result* r)
{
    return r ? r->res.records.size() : 0;
}

nsf_status nsf_result_record(const nsf_result* r, size_t i, nsf_record* out)
{
    if (!r || !out)
        return fail(NSF_ERR_ARGUMENT, "null argument");
    if (i >= r->res.records.size())
        return fail(NSF_ERR_ARGUMENT, "record index out of range");
    const nsf::DiagnosticsRecord& d = r->res.records[i];
    *out = nsf_record{d.t,     d.X,     d.Xdot,  d.E_weighted, d.G1,         d.G2,      d.GS,
                      d.D_rho, d.D_u1,  d.D_th1, d.D_u2,       d.D_th2,      d.D_weighted,
                      {d.Y[0], d.Y[1], d.Y[2], d.Y[3], d.Y[4], d.Y[5]},
                      {d.P[0], d.P[1], d.P[2], d.P[3], d.P[4]},
                      d.sup_err, d.l2_err, d.h1_err};
    return NSF_OK;
}

nsf_status nsf_result_summary_value(const nsf_result* r, const char* name, double* out)
{
    if (!r || !name || !out)
        return fail(NSF_ERR_ARGUMENT, "null argument");
    const json j = summary_json(r->res.summary);
    const auto it = j.find(name);
    if (it == j.end() || !it->is_number())
        return fail(NSF_ERR_ARGUMENT, std::string("no numeric summary entry '") + name + "'");
    *out = it->get<double>();
    return NSF_OK;
}

nsf_status nsf_result_summary_json(const nsf_result* r, char** out)
{
    if (!r || !out)
        return fail(NSF_ERR_ARGUMENT, "null argument");
    return guarded([&] { *out = dup(summary_json(r->res.summary).dump(2)); });
}

nsf_status nsf_result_dissipation_json(const nsf_result* r, char** out)
{
    if (!r || !out)
        return fail(NSF_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        const auto& d = r->res.dissipation;
        json j;
        j["c_star"] = d.c_star;
        j["c_star_least_squares"] = d.c_star_least_squares;
        j["c_star_one_sided"] = d.c_star_one_sided;
        j["steps"] = d.steps;
        j["violations"] = d.violations;
        j["pass_fraction"] = d.pass_fraction;
        j["violation_steps"] = d.violation_steps;
        j["gronwall_excess"] = d.gronwall_excess;
        j["gronwall_ok"] = d.gronwall_ok;
        *out = dup(j.dump(2));
    });
}

void nsf_result_free(nsf_result* r)
{
    delete r;
}

nsf_status nsf_sweep(const nsf_scenario* s, char** report_json)
{
    if (!s || !report_json)
        return fail(NSF_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        const nsf::SweepReport rep = nsf::run_sweep(s->cfg);
        json j;
        j["parameter"] = rep.parameter;
        j["points"] = json::array();
        for (const auto& pt : rep.points) {
            json p;
            p["value"] = pt.value;
            p["ok"] = pt.ok;
            if (pt.ok)
                p["summary"] = summary_json(pt.summary);
            else {
                p["error"] = pt.error;
                p["error_kind"] = pt.error_kind;
            }
            j["points"].push_back(p);
        }
        j["fits"] = json::array();
        for (const auto& f : rep.fits)
            j["fits"].push_back(
                {{"metric", f.metric}, {"points", f.points}, {"loglog_slope", f.loglog_slope}, {"semilog_rate", f.semilog_rate}});
        *report_json = dup(j.dump(2));
    });
}

nsf_status nsf_check_profile(const nsf_scenario* s, char** report_json, int* ok)
{
    if (!s || !report_json || !ok)
        return fail(NSF_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        const nsf::ProfileCheckReport rep = nsf::check_profile(s->cfg);
        json j;
        j["rows"] = json::array();
        for (const auto& r : rep.properties.rows)
            j["rows"].push_back({{"delta", r.delta},
                                 {"monotone", r.monotone},
                                 {"mass_residual", r.mass_residual},
                                 {"vshock_residual", r.vshock_residual},
                                 {"rho_zero_error", r.rho_zero_error},
                                 {"tail_rate_fit", r.tail_rate_fit},
                                 {"tail_rate_linear", r.tail_rate_linear},
                                 {"estderi_rho", r.estderi_rho},
                                 {"estderi_theta", r.estderi_theta},
                                 {"uxx_ratio", r.uxx_ratio},
                                 {"sigma_gap", r.sigma_gap},
                                 {"sound_gap", r.sound_gap},
                                 {"sigma_minus_u_positive", r.sigma_minus_u_positive},
                                 {"supersonic_fraction", r.supersonic_fraction},
                                 {"weight_bounds", r.weight_bounds}});
        const auto& p = rep.properties;
        j["slopes"] = {{"estderi_rho", p.slope_estderi_rho},   {"estderi_theta", p.slope_estderi_theta},
                       {"sigma_gap", p.slope_sigma_gap},       {"tail_rate", p.slope_tail_rate},
                       {"uxx_ratio", p.slope_uxx},             {"sound_gap", p.slope_sound_gap},
                       {"jacobian_deviation", rep.jacobian_slope}};
        j["jacobian"] = {{"delta", rep.jacobian_deltas}, {"deviation", rep.jacobian_deviation}};
        j["failures"] = rep.failures;
        j["ok"] = rep.ok;
        *ok = rep.ok ? 1 : 0;
        *report_json = dup(j.dump(2));
    });
}

nsf_status nsf_check_poincare(const nsf_scenario* s, char** report_json, int* ok)
{
    if (!s || !report_json || !ok)
        return fail(NSF_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        const nsf::PoincareSuiteReport rep = nsf::check_poincare(s->cfg);
        json j{{"samples", rep.samples},       {"failures", rep.failures}, {"linear_lhs", rep.linear_lhs},
               {"linear_rhs", rep.linear_rhs}, {"ok", rep.ok}};
        *ok = rep.ok ? 1 : 0;
        *report_json = dup(j.dump(2));
    });
}

} // extern "C"
