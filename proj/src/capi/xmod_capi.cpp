#include "xmod/xmod.h"

#include "homology/cochain.hpp"
#include "spec/runner.hpp"

#include <string>

struct xmod_spec {
    xmod::SpecFile spec;
};

struct xmod_report {
    xmod::RunResult result;
    std::string text;
};

namespace {

thread_local std::string last_error;

xmod_status fail(xmod_status status, std::string message) {
    last_error = std::move(message);
    return status;
}

// Runs `body`, mapping exceptions to status codes.
template <class F>
xmod_status guarded(F&& body) {
    try {
        last_error.clear();
        return body();
    } catch (const xmod::SpecParseError& e) {
        return fail(XMOD_ERR_INPUT, e.what());
    } catch (const xmod::InputError& e) {
        return fail(XMOD_ERR_INPUT, e.what());
    } catch (const xmod::BudgetExceeded& e) {
        return fail(XMOD_ERR_BUDGET, e.what());
    } catch (const std::bad_alloc&) {
        return fail(XMOD_ERR_BUDGET, "out of memory");
    } catch (const std::exception& e) {
        return fail(XMOD_ERR_INVARIANT, e.what());
    }
}

xmod::RunOptions convert(const xmod_options* o) {
    xmod::RunOptions r;
    if (!o)
        return r;
    if (o->coeff)
        r.coeff = o->coeff;
    if (o->max_degree >= 0)
        r.max_degree = o->max_degree;
    if (o->budget)
        r.budget = o->budget;
    if (o->normalized >= 0)
        r.normalized = o->normalized != 0;
    r.threads = o->threads ? o->threads : 1;
    return r;
}

const xmod::CrossedModule* find_crossed(const xmod_spec* spec, const char* name) {
    auto it = spec->spec.crossed.find(name);
    return it == spec->spec.crossed.end() ? nullptr : &it->second;
}

xmod_status store_report(xmod::RunResult result, xmod_report** out) {
    *out = new xmod_report{std::move(result), {}};
    const int code = (*out)->result.exit_code;
    if (code != XMOD_OK) {
        const auto& errors = (*out)->result.report["errors"];
        if (errors.empty()) {
            last_error = "command failed";
        } else {
            const int line = errors[0]["line"].get<int>();
            last_error = (line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
                         errors[0]["message"].get<std::string>();
        }
    }
    return static_cast<xmod_status>(code);
}

} // namespace

extern "C" {

const char* xmod_version(void) { return xmod::version_string(); }

const char* xmod_last_error(void) { return last_error.c_str(); }

void xmod_options_init(xmod_options* options) {
    if (options)
        *options = xmod_options{nullptr, -1, 0, -1, 1};
}

xmod_status xmod_spec_parse(const char* text, xmod_spec** out) {
    if (!text || !out)
        return fail(XMOD_ERR_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&] {
        *out = new xmod_spec{xmod::parse_spec(text)};
        return XMOD_OK;
    });
}

void xmod_spec_free(xmod_spec* spec) { delete spec; }

size_t xmod_spec_crossed_count(const xmod_spec* spec) { return spec ? spec->spec.crossed_order.size() : 0; }

const char* xmod_spec_crossed_name(const xmod_spec* spec, size_t index) {
    if (!spec || index >= spec->spec.crossed_order.size())
        return nullptr;
    return spec->spec.crossed_order[index].c_str();
}

xmod_status xmod_crossed_orders(const xmod_spec* spec, const char* name, uint64_t* source_order,
                                uint64_t* target_order, uint64_t* pi1_order, uint64_t* pi2_order) {
    if (!spec || !name)
        return fail(XMOD_ERR_ARGUMENT, "null argument");
    const auto* cm = find_crossed(spec, name);
    if (!cm)
        return fail(XMOD_ERR_INPUT, std::string("unknown crossed module '") + name + "'");
    return guarded([&] {
        auto inv = xmod::homotopy_invariants(*cm);
        if (source_order)
            *source_order = cm->g().order();
        if (target_order)
            *target_order = cm->h().order();
        if (pi1_order)
            *pi1_order = inv.pi_low.group->order();
        if (pi2_order)
            *pi2_order = inv.pi_high.group->order();
        return XMOD_OK;
    });
}

xmod_status xmod_crossed_cohomology(const xmod_spec* spec, const char* name, const char* coeff, int max_degree,
                                    uint64_t budget, uint64_t* ranks, size_t capacity, size_t* count) {
    if (!spec || !name || !ranks || !count)
        return fail(XMOD_ERR_ARGUMENT, "null argument");
    if (max_degree < 0 || capacity < static_cast<size_t>(max_degree) + 1)
        return fail(XMOD_ERR_ARGUMENT, "capacity must be at least max_degree + 1");
    *count = 0;
    const auto* cm = find_crossed(spec, name);
    if (!cm)
        return fail(XMOD_ERR_INPUT, std::string("unknown crossed module '") + name + "'");
    return guarded([&] {
        xmod::ComplexOptions opts;
        if (budget)
            opts.budget = budget;
        auto r = xmod::cohomology(*cm, xmod::parse_coefficients(coeff ? coeff : "Q"), max_degree, opts);
        for (const auto& d : r.degrees)
            ranks[(*count)++] = d.rank;
        if (!r.complete())
            return fail(XMOD_ERR_BUDGET, r.stop_reason);
        return XMOD_OK;
    });
}

xmod_status xmod_run(const xmod_spec* spec, const char* command, const xmod_options* options, xmod_report** out) {
    if (!spec || !command || !out)
        return fail(XMOD_ERR_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&] { return store_report(xmod::run_command(spec->spec, command, convert(options)), out); });
}

xmod_status xmod_run_text(const char* text, const char* command, const xmod_options* options, xmod_report** out) {
    if (!text || !command || !out)
        return fail(XMOD_ERR_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&] { return store_report(xmod::run_spec_text(text, command, convert(options)), out); });
}

int xmod_report_exit_code(const xmod_report* report) { return report ? report->result.exit_code : XMOD_ERR_ARGUMENT; }

const char* xmod_report_json(xmod_report* report, int indent) {
    if (!report)
        return nullptr;
    report->text = report->result.report.dump(indent < 0 ? -1 : indent, ' ', false,
                                              nlohmann::json::error_handler_t::replace);
    return report->text.c_str();
}

void xmod_report_drop_timings(xmod_report* report) {
    if (report)
        report->result.report.erase("timings");
}

void xmod_report_free(xmod_report* report) { delete report; }

} // extern "C"
