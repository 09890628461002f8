// capi.cpp
#include "vortexlab/vortexlab.h"

#include <exception>
#include <string>
#include <vector>

#include <json.hpp>

#include "vortexlab/bounds.hpp"
#include "vortexlab/conformal_domain.hpp"
#include "vortexlab/crystal.hpp"
#include "vortexlab/errors.hpp"
#include "vortexlab/linearization.hpp"
#include "vortexlab/report.hpp"

namespace {

thread_local std::string g_last_error;

vl_status capture(const std::exception& e, vl_status code) {
    g_last_error = e.what();
    return code;
}

template <typename Fn>
vl_status guarded(Fn&& fn) {
    try {
        fn();
        return VL_OK;
    } catch (const vortexlab::ConfigError& e) {
        return capture(e, VL_ERR_CONFIG);
    } catch (const vortexlab::DomainError& e) {
        return capture(e, VL_ERR_CONFIG);
    } catch (const std::invalid_argument& e) {
        return capture(e, VL_ERR_CONFIG);
    } catch (const std::exception& e) {
        return capture(e, VL_ERR_NUMERIC);
    } catch (...) {
        g_last_error = "unknown error";
        return VL_ERR_INTERNAL;
    }
}

} // namespace

struct vl_report {
    std::string json_text;
    std::vector<std::string> files;
    bool passed = true;
};

struct vl_domain {
    vortexlab::HexDomain impl;
};

extern "C" {

const char* vl_version(void) { return vortexlab::kVersion; }

const char* vl_last_error(void) { return g_last_error.c_str(); }

vl_status vl_run_experiment(const char* config_json, vl_report** out) {
    if (config_json == nullptr || out == nullptr) {
        g_last_error = "null argument";
        return VL_ERR_CONFIG;
    }
    *out = nullptr;
    return guarded([&] {
        nlohmann::json parsed;
        try {
            parsed = nlohmann::json::parse(config_json);
        } catch (const nlohmann::json::exception& e) {
            throw vortexlab::ConfigError(std::string("config is not valid JSON: ") + e.what());
        }
        const vortexlab::ExperimentConfig config =
            vortexlab::ExperimentConfig::from_json(parsed);
        const vortexlab::RunResult result = vortexlab::run_experiment(config);
        auto* report = new vl_report;
        report->json_text = result.report.dump(2);
        report->files = result.files_written;
        if (result.report.contains("passed")) {
            report->passed = result.report.at("passed").get<bool>();
        }
        *out = report;
    });
}

const char* vl_report_json(const vl_report* report) {
    return report ? report->json_text.c_str() : "";
}

size_t vl_report_file_count(const vl_report* report) {
    return report ? report->files.size() : 0;
}

const char* vl_report_file(const vl_report* report, size_t index) {
    if (report == nullptr || index >= report->files.size()) return "";
    return report->files[index].c_str();
}

int vl_report_passed(const vl_report* report) {
    return (report && report->passed) ? 1 : 0;
}

void vl_report_free(vl_report* report) { delete report; }

vl_status vl_coupling_constant(double alpha, double* out) {
    if (out == nullptr) {
        g_last_error = "null argument";
        return VL_ERR_CONFIG;
    }
    return guarded([&] { *out = vortexlab::coupling_constant(alpha); });
}

vl_status vl_crystal_center_intensity(int n, double alpha, double* out) {
    if (out == nullptr) {
        g_last_error = "null argument";
        return VL_ERR_CONFIG;
    }
    return guarded([&] {
        *out = vortexlab::center_intensity({n, vortexlab::AlphaModel(alpha)});
    });
}

vl_status vl_crystal_spectrum(int n, double alpha, double* lambda0, double* kappa1,
                              double* kappa2, double* nu_min) {
    return guarded([&] {
        const vortexlab::CrystalSpec spec{n, vortexlab::AlphaModel(alpha)};
        const vortexlab::Configuration z = vortexlab::build_crystal(spec);
        const vortexlab::SpectralReport rep =
            vortexlab::spectrum(vortexlab::jacobian_analytic(spec.model, z), spec.model, z);
        if (lambda0) *lambda0 = rep.lambda0;
        if (kappa1) *kappa1 = rep.kappa1;
        if (kappa2) *kappa2 = rep.kappa2;
        if (nu_min) {
            *nu_min = rep.lambda0 > 0.0
                          ? vortexlab::nu_threshold(alpha, rep.kappa1, rep.kappa2, rep.lambda0)
                          : 0.0;
        }
    });
}

vl_status vl_domain_create(double delta, vl_domain** out) {
    if (out == nullptr) {
        g_last_error = "null argument";
        return VL_ERR_CONFIG;
    }
    *out = nullptr;
    return guarded([&] { *out = new vl_domain{vortexlab::HexDomain(delta)}; });
}

void vl_domain_free(vl_domain* domain) { delete domain; }

vl_status vl_domain_taylor(const vl_domain* domain, double* t1_abs, double* t3_abs) {
    if (domain == nullptr) {
        g_last_error = "null domain";
        return VL_ERR_CONFIG;
    }
    if (t1_abs) *t1_abs = domain->impl.taylor().t1_abs;
    if (t3_abs) *t3_abs = domain->impl.taylor().t3_abs;
    return VL_OK;
}

vl_status vl_domain_map(const vl_domain* domain, double wx, double wy, double* zx,
                        double* zy) {
    if (domain == nullptr) {
        g_last_error = "null domain";
        return VL_ERR_CONFIG;
    }
    return guarded([&] {
        const vortexlab::Complex z = domain->impl.sc_map({wx, wy});
        if (zx) *zx = z.real();
        if (zy) *zy = z.imag();
    });
}

vl_status vl_domain_inverse(const vl_domain* domain, double zx, double zy, double* wx,
                            double* wy) {
    if (domain == nullptr) {
        g_last_error = "null domain";
        return VL_ERR_CONFIG;
    }
    return guarded([&] {
        const vortexlab::Complex w = domain->impl.inverse_map({zx, zy});
        if (wx) *wx = w.real();
        if (wy) *wy = w.imag();
    });
}

vl_status vl_domain_robin(const vl_domain* domain, double wx, double wy,
                          double* gamma_tilde, double* conformal_radius) {
    if (domain == nullptr) {
        g_last_error = "null domain";
        return VL_ERR_CONFIG;
    }
    return guarded([&] {
        const vortexlab::RobinData rd = domain->impl.robin_data({wx, wy});
        if (gamma_tilde) *gamma_tilde = rd.gamma_tilde;
        if (conformal_radius) *conformal_radius = rd.conformal_radius;
    });
}

} // extern "C"
