#include "corepower/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace corepower {

namespace {

constexpr double kDivergenceFactor = 1e6;

// Loss is computed on power in milliwatts so the gradients of differently
// sized components live in a comparable numeric band.
constexpr double kWattsToMw = 1e3;

double range_width(const ParameterSpec& spec) { return spec.max_value - spec.min_value; }

/// Range projection without the integer snapping of clamp(): integer
/// parameters stay continuous while the descent runs.
double project(const ParameterSpec& spec, double v) {
    return std::min(std::max(v, spec.min_value), spec.max_value);
}

}  // namespace

void TrainingSample::validate() const {
    hw.validate();
    events.validate();
    if (!(total_label_w > 0.0)) {
        throw std::invalid_argument("sample " + config_id + "/" + workload +
                                    ": total power label must be > 0");
    }
    double sum = 0.0;
    for (int i = 0; i < kComponentCount; ++i) {
        if (!(component_labels_w[i] > 0.0)) {
            throw std::invalid_argument(
                "sample " + config_id + "/" + workload + ": label for " +
                component_name(static_cast<ComponentId>(i)) + " must be > 0");
        }
        sum += component_labels_w[i];
    }
    if (std::abs(sum - total_label_w) > 0.01 * total_label_w) {
        throw std::invalid_argument("sample " + config_id + "/" + workload +
                                    ": component labels sum to " + std::to_string(sum) +
                                    " W, more than 1% away from total " +
                                    std::to_string(total_label_w) + " W");
    }
}

void CalibrationConfig::validate() const {
    if (!(learning_rate > 0.0)) throw std::invalid_argument("learning_rate must be > 0");
    if (delta < 0.0) throw std::invalid_argument("delta must be >= 0");
    if (delta > 0.0) {
        for (const auto& spec : parameter_registry()) {
            if (spec.level != ParamLevel::Implementation) continue;
            if (delta >= range_width(spec)) {
                throw std::invalid_argument("delta " + std::to_string(delta) +
                                            " is not smaller than the range width of " +
                                            spec.name);
            }
        }
    }
    if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
    if (early_stop_patience < 1) {
        throw std::invalid_argument("early_stop_patience must be >= 1");
    }
    if (!(early_stop_rel_tol >= 0.0)) {
        throw std::invalid_argument("early_stop_rel_tol must be >= 0");
    }
}

void TechCharacterization::validate() const {
    if (sram_rows < 1 || sram_width < 1) {
        throw std::invalid_argument("characterization SRAM shape must be at least 1x1");
    }
    if (!(sram_read_energy_pj > 0.0) || !(sram_write_energy_pj > 0.0)) {
        throw std::invalid_argument("characterization SRAM energies must be > 0");
    }
    if (!(dff_worst_case_power_uw > 0.0)) {
        throw std::invalid_argument("characterization DFF power must be > 0");
    }
    if (!(dff_reference_freq_hz > 0.0)) {
        throw std::invalid_argument("characterization DFF frequency must be > 0");
    }
}

double decide_tech_array_factor(const TechCharacterization& chr, const TechProfile& tech) {
    chr.validate();
    tech.validate();
    ArrayGeometry probe;
    probe.rows = chr.sram_rows;
    probe.width_bits = chr.sram_width;
    double model_read = array_op_energy(probe, ArrayOp::Read, tech, 1.0);
    double model_write = array_op_energy(probe, ArrayOp::Write, tech, 1.0);
    if (!(model_read > 0.0) || !(model_write > 0.0)) {
        throw std::runtime_error("model probe energy is zero; tech profile is invalid");
    }
    return 0.5 * (chr.sram_read_energy_pj / model_read +
                  chr.sram_write_energy_pj / model_write);
}

double decide_tech_logic_factor(const TechCharacterization& chr, const TechProfile& tech) {
    chr.validate();
    tech.validate();
    // The model's worst-case DFF power scales linearly with clock frequency
    // from its 1 GHz reference; compare at the library's stated frequency.
    double model_power_uw = tech.dff_clock_toggle_power_uw *
                            (chr.dff_reference_freq_hz / kDffReferenceFreqHz);
    return chr.dff_worst_case_power_uw / model_power_uw;
}

double default_delta(ParamId param) {
    const ParameterSpec& spec = param_spec(param);
    return std::max(1e-3 * range_width(spec), 1e-6);
}

double finite_diff_gradient(const std::function<double(const ParameterSet&)>& predict,
                            const ParameterSet& set, ParamId param, double delta) {
    const ParameterSpec& spec = param_spec(param);
    if (spec.value_type == ValueType::Enum || spec.value_type == ValueType::Bool) {
        throw std::invalid_argument("cannot differentiate along enum parameter " +
                                    spec.name);
    }
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be > 0");

    double p = set.get(param);
    ParameterSet shifted = set;
    if (p + delta <= spec.max_value) {
        shifted.set(param, p + delta);
        return (predict(shifted) - predict(set)) / delta;
    }
    if (p - delta < spec.min_value) {
        throw std::invalid_argument("delta " + std::to_string(delta) +
                                    " does not fit the range of " + spec.name);
    }
    shifted.set(param, p - delta);
    return (predict(set) - predict(shifted)) / delta;
}

namespace {

struct DescentState {
    std::vector<ParamId> params;
    std::vector<const ParameterSpec*> specs;
    std::vector<double> deltas;
    // slopes[i][s]: d(prediction of sample s, mW) / d(param i).
    std::vector<std::vector<double>> slopes;
    std::vector<bool> slopes_cached;
};

}  // namespace

ComponentCalibration calibrate_component(ComponentId id,
                                         const std::vector<TrainingSample>& samples,
                                         const ParameterSet& base,
                                         const TechProfile& tech,
                                         const CalibrationConfig& config) {
    config.validate();
    if (samples.empty()) throw std::invalid_argument("no training samples");
    for (const auto& s : samples) s.validate();

    const size_t n = samples.size();
    std::vector<double> labels_mw(n);
    for (size_t s = 0; s < n; ++s) {
        labels_mw[s] = samples[s].component_labels_w[static_cast<int>(id)] * kWattsToMw;
    }

    auto predict_mw = [&](const ParameterSet& ps, size_t s) {
        ComponentPower p = estimate_component(id, samples[s].hw, samples[s].events, ps, tech);
        return p.total_w() * kWattsToMw;
    };

    DescentState st;
    st.params = implementation_params_of(id);
    for (ParamId pid : st.params) {
        st.specs.push_back(&param_spec(pid));
        st.deltas.push_back(config.delta > 0.0 ? config.delta : default_delta(pid));
    }
    st.slopes.assign(st.params.size(), std::vector<double>(n, 0.0));
    st.slopes_cached.assign(st.params.size(), false);

    ParameterSet current = clamp(base);

    std::vector<double> preds(n);
    auto batch_loss_from_preds = [&]() {
        double acc = 0.0;
        for (size_t s = 0; s < n; ++s) {
            double e = preds[s] - labels_mw[s];
            acc += e * e;
        }
        return acc / static_cast<double>(n);
    };
    auto evaluate = [&](const ParameterSet& ps) {
        for (size_t s = 0; s < n; ++s) preds[s] = predict_mw(ps, s);
        return batch_loss_from_preds();
    };

    ComponentCalibration result;
    result.component = id;

    double loss = evaluate(current);
    const double initial_loss = loss;
    result.initial_loss = initial_loss;
    result.loss_history.push_back(loss);

    ParameterSet best = current;
    double best_loss = loss;

    // Refreshes the per-sample slope of parameter i at the current iterate.
    // Linear parameters keep the slope computed on the first visit.
    auto refresh_slope = [&](size_t i) {
        if (st.specs[i]->linear && st.slopes_cached[i]) return;
        ParamId pid = st.params[i];
        double p = current.get(pid);
        double d = st.deltas[i];
        bool forward = p + d <= st.specs[i]->max_value;
        ParameterSet shifted = current;
        shifted.set(pid, forward ? p + d : p - d);
        for (size_t s = 0; s < n; ++s) {
            double shifted_pred = predict_mw(shifted, s);
            st.slopes[i][s] =
                forward ? (shifted_pred - preds[s]) / d : (preds[s] - shifted_pred) / d;
        }
        st.slopes_cached[i] = true;
    };

    int stall = 0;
    for (int iter = 0; iter < config.max_iterations; ++iter) {
        // Parameters step one at a time, each seeing the residuals left by
        // the previous step (tracked through the cached slopes, and trued up
        // by the full evaluation below). With the curvature normalization a
        // coordinate step is plain quadratic descent, stable for
        // learning_rate < 2.
        bool moved = false;
        for (size_t i = 0; i < st.params.size(); ++i) {
            refresh_slope(i);
            double grad = 0.0;
            double curvature = 0.0;
            for (size_t s = 0; s < n; ++s) {
                grad += 2.0 * (preds[s] - labels_mw[s]) * st.slopes[i][s];
                curvature += 2.0 * st.slopes[i][s] * st.slopes[i][s];
            }
            grad /= static_cast<double>(n);
            curvature /= static_cast<double>(n);
            if (!(curvature > 0.0)) continue;  // parameter has no effect here

            double v = current.get(st.params[i]);
            double stepped = project(*st.specs[i],
                                     v - config.learning_rate * grad / curvature);
            if (stepped == v) continue;
            current.set(st.params[i], stepped);
            for (size_t s = 0; s < n; ++s) {
                preds[s] += st.slopes[i][s] * (stepped - v);
            }
            moved = true;
        }
        if (!moved) break;  // zero gradient everywhere: at a (clamped) optimum

        double prev = loss;
        loss = evaluate(current);
        result.loss_history.push_back(loss);

        if (initial_loss > 0.0 && loss > kDivergenceFactor * initial_loss) {
            std::ostringstream msg;
            msg << component_name(id) << " calibration diverged at iteration " << iter
                << ": loss " << loss << " exceeds 1e6x initial loss " << initial_loss
                << " (lower the learning rate)";
            throw CalibrationDivergence(msg.str());
        }
        if (loss < best_loss) {
            best_loss = loss;
            best = current;
        }
        double rel_improvement = prev > 0.0 ? (prev - loss) / prev : 0.0;
        stall = rel_improvement < config.early_stop_rel_tol ? stall + 1 : 0;
        result.iterations = iter + 1;
        if (stall >= config.early_stop_patience) break;
    }

    // Integer repair: round the best continuous iterate, then try +-1 around
    // each integer parameter and keep improvements. The initial (integral)
    // point backstops the best-iterate guarantee.
    ParameterSet repaired = best;
    bool has_int = false;
    for (size_t i = 0; i < st.params.size(); ++i) {
        if (st.specs[i]->value_type == ValueType::Int) {
            repaired.set(st.params[i],
                         project(*st.specs[i], std::round(best.get(st.params[i]))));
            has_int = true;
        }
    }
    double repaired_loss = has_int ? evaluate(repaired) : best_loss;
    if (has_int) {
        for (size_t i = 0; i < st.params.size(); ++i) {
            if (st.specs[i]->value_type != ValueType::Int) continue;
            for (double offset : {-1.0, 1.0}) {
                ParameterSet candidate = repaired;
                candidate.set(st.params[i], project(*st.specs[i],
                                                    repaired.get(st.params[i]) + offset));
                double candidate_loss = evaluate(candidate);
                if (candidate_loss < repaired_loss) {
                    repaired = candidate;
                    repaired_loss = candidate_loss;
                }
            }
        }
    }
    if (repaired_loss > initial_loss) {
        repaired = clamp(base);
        repaired_loss = initial_loss;
    }

    result.final_loss = repaired_loss;
    for (ParamId pid : st.params) result.values[pid] = repaired.get(pid);
    return result;
}

CalibrationResult calibrate_all(const std::vector<TrainingSample>& samples,
                                const ParameterSet& arch_input,
                                const TechCharacterization& tech_char,
                                const TechProfile& tech,
                                const CalibrationConfig& config) {
    if (samples.empty()) throw std::invalid_argument("no training samples");

    // Architecture: taken from the user.
    ParameterSet params = default_parameter_set();
    for (const auto& spec : parameter_registry()) {
        if (spec.level == ParamLevel::Architecture) {
            params.set(spec.id, arch_input.get(spec.id));
        }
    }
    params = clamp(params);
    params.set_provenance(ParamLevel::Architecture, Provenance::UserSupplied);

    // Technology: decided from the library characterization.
    params.set(ParamId::TechArrayFactor,
               project(param_spec(ParamId::TechArrayFactor),
                       decide_tech_array_factor(tech_char, tech)));
    params.set(ParamId::TechLogicFactor,
               project(param_spec(ParamId::TechLogicFactor),
                       decide_tech_logic_factor(tech_char, tech)));
    params.set_provenance(ParamLevel::Technology, Provenance::Calibrated);

    // Implementation: each component fitted independently.
    CalibrationResult result{params, {}};
    for (ComponentId id : kAllComponents) {
        if (implementation_params_of(id).empty()) continue;
        ComponentCalibration cc =
            calibrate_component(id, samples, result.params, tech, config);
        for (const auto& [pid, value] : cc.values) result.params.set(pid, value);
        result.components.push_back(std::move(cc));
    }
    result.params.set_provenance(ParamLevel::Implementation, Provenance::Calibrated);
    result.params = clamp(result.params);
    return result;
}

double fit_scaling_baseline(const std::vector<TrainingSample>& samples,
                            const TechProfile& tech) {
    if (samples.empty()) throw std::invalid_argument("no training samples");
    ParameterSet defaults = default_parameter_set();
    double acc = 0.0;
    for (const auto& s : samples) {
        s.validate();
        double base_total = estimate_core(s.hw, s.events, defaults, tech).total_power_w;
        if (!(base_total > 0.0)) {
            throw std::runtime_error("base model prediction is not positive for sample " +
                                     s.config_id + "/" + s.workload);
        }
        acc += s.total_label_w / base_total;
    }
    return acc / static_cast<double>(samples.size());
}

}  // namespace corepower
