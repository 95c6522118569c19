#include "ca3sim/memory/models.hpp"

#include <cmath>
#include <stdexcept>

#include "ca3sim/plasticity/freeze.hpp"

namespace ca3sim {

std::string to_string(ModelKind kind) {
    return kind == ModelKind::oscillatory ? "oscillatory" : "regulated";
}

ModelKind model_kind_from_string(const std::string& s) {
    if (s == "oscillatory") return ModelKind::oscillatory;
    if (s == "regulated") return ModelKind::regulated;
    throw std::invalid_argument("unknown model kind '" + s + "'");
}

StdpParams oscillatory_stdp_defaults() {
    StdpParams p;
    p.tau_plus = 3.0;
    p.tau_minus = 2.0;
    p.a_plus = 3.17;
    p.a_minus = 1.585;
    p.w_max = 2.695;
    p.w_min = 0.0;
    p.w_init = 0.0;
    p.delay_ms = 1.0;
    return p;
}

StdpParams regulated_stdp_defaults() {
    StdpParams p;
    p.tau_plus = 3.0;
    p.tau_minus = 2.0;
    p.a_plus = 6.0;
    p.a_minus = 3.0;
    p.w_max = 6.5;
    p.w_min = 0.0;
    p.w_init = 0.0;
    p.delay_ms = 1.0;
    return p;
}

namespace {

NeuronParams lif_with_refrac(double tau_refrac) {
    NeuronParams p;  // reference constants are the defaults
    p.tau_refrac = tau_refrac;
    return p;
}

/// One DG spike must always fire the paired PC from rest.
void probe_dg_drive(const NetworkTopology& topology) {
    StimulusSchedule stim;
    stim.add("DG", 0, 1.0);
    SimulationConfig cfg;
    cfg.dt = 1.0;
    cfg.duration_ms = 4.0;
    SimulationResult r = run_simulation(topology, stim, cfg);
    if (r.spikes.first_spike_in_window("PC", 0, 2.0, 3.0) < 0.0)
        throw std::invalid_argument(
            "input drive weight is subthreshold: a DG spike failed to fire its PC");
}

}  // namespace

void OscillatoryConfig::validate() const {
    if (n < 2) throw std::invalid_argument("OscillatoryConfig: n must be >= 2");
    if (w_dg_pc <= 0.0 || w_pc_pc_inh < 0.0)
        throw std::invalid_argument("OscillatoryConfig: bad weights");
    if (presentations < 1 || cue_deliveries < 1 || cue_deliveries > 5)
        throw std::invalid_argument("OscillatoryConfig: bad delivery counts");
    if (slot_ms < presentations + 2.0)
        throw std::invalid_argument("OscillatoryConfig: slot too short");
    if (tau_refrac != 0.0)
        throw std::invalid_argument("OscillatoryConfig: refractory period is fixed at 0");
    stdp.validate();
}

void RegulatedConfig::validate() const {
    if (n < 2) throw std::invalid_argument("RegulatedConfig: n must be >= 2");
    if (w_dg_pc <= 0.0 || w_pc_pc_inh < 0.0 || w_learning_inh <= 0.0 || w_dg_inh <= 0.0 ||
        w_inh_pc <= 0.0)
        throw std::invalid_argument("RegulatedConfig: bad weights");
    if (tau_refrac != 2.0)
        throw std::invalid_argument("RegulatedConfig: refractory period is fixed at 2 ms");
    if (presentations < 1 || delivery_ms < 1)
        throw std::invalid_argument("RegulatedConfig: bad presentation structure");
    if ((presentations - 1) * presentation_spacing + delivery_ms + 2.0 > learn_slot_ms)
        throw std::invalid_argument("RegulatedConfig: presentations do not fit the slot");
    stdp.validate();
}

NetworkTopology build_oscillatory(const OscillatoryConfig& cfg) {
    cfg.validate();
    NetworkTopology t;
    t.stdp = cfg.stdp;
    t.add_spike_source("DG", cfg.n);
    t.add_population("PC", cfg.n, lif_with_refrac(cfg.tau_refrac));
    const Population& dg = t.population("DG");
    const Population& pc = t.population("PC");
    for (std::uint32_t i = 0; i < cfg.n; ++i)
        t.static_synapses.push_back(
            StaticSynapse{dg.first + i, pc.first + i, cfg.w_dg_pc, Receptor::excitatory, 1.0});
    for (std::uint32_t i = 0; i < cfg.n; ++i) {
        for (std::uint32_t j = 0; j < cfg.n; ++j) {
            if (i == j) continue;
            PlasticSynapse p;
            p.pre = pc.first + i;
            p.post = pc.first + j;
            p.weight = cfg.stdp.w_init;
            t.plastic_synapses.push_back(p);
            t.static_synapses.push_back(StaticSynapse{pc.first + i, pc.first + j,
                                                      cfg.w_pc_pc_inh, Receptor::inhibitory, 1.0});
        }
    }
    probe_dg_drive(t);
    return t;
}

NetworkTopology build_regulated(const RegulatedConfig& cfg) {
    cfg.validate();
    NetworkTopology t;
    t.stdp = cfg.stdp;
    t.add_spike_source("DG", cfg.n);
    t.add_population("PC", cfg.n, lif_with_refrac(cfg.tau_refrac));
    t.add_population("INH", cfg.n, lif_with_refrac(cfg.tau_refrac));
    t.add_spike_source("LEARNING", 1);
    const Population& dg = t.population("DG");
    const Population& pc = t.population("PC");
    const Population& inh = t.population("INH");
    const Population& learning = t.population("LEARNING");
    for (std::uint32_t i = 0; i < cfg.n; ++i) {
        t.static_synapses.push_back(
            StaticSynapse{dg.first + i, pc.first + i, cfg.w_dg_pc, Receptor::excitatory, 1.0});
        t.static_synapses.push_back(
            StaticSynapse{dg.first + i, inh.first + i, cfg.w_dg_inh, Receptor::inhibitory, 1.0});
        t.static_synapses.push_back(
            StaticSynapse{inh.first + i, pc.first + i, cfg.w_inh_pc, Receptor::inhibitory, 1.0});
        t.static_synapses.push_back(StaticSynapse{learning.first, inh.first + i,
                                                  cfg.w_learning_inh, Receptor::excitatory, 1.0});
    }
    for (std::uint32_t i = 0; i < cfg.n; ++i) {
        for (std::uint32_t j = 0; j < cfg.n; ++j) {
            if (i == j) continue;
            PlasticSynapse p;
            p.pre = pc.first + i;
            p.post = pc.first + j;
            p.weight = cfg.stdp.w_init;
            t.plastic_synapses.push_back(p);
            t.static_synapses.push_back(StaticSynapse{pc.first + i, pc.first + j,
                                                      cfg.w_pc_pc_inh, Receptor::inhibitory, 1.0});
        }
    }
    probe_dg_drive(t);
    return t;
}

ResourceCounts count_resources(ModelKind kind, std::uint32_t n) {
    if (n < 2) throw std::invalid_argument("count_resources: n must be >= 2");
    ResourceCounts r;
    const std::uint64_t nn = n;
    r.stdp_synapses = nn * (nn - 1);
    r.recurrent_inhibitory_synapses = nn * (nn - 1);
    if (kind == ModelKind::oscillatory) {
        r.neurons = 2 * nn;
        r.static_synapses = nn;  // the DG->PC relay, per the headline convention
        r.learning_latency_ms = 14.0;
        r.recall_latency_ms = 14.0;
    } else {
        r.neurons = 3 * nn + 1;
        r.static_synapses = 4 * nn;  // DG->PC, DG->INH, INH->PC, LEARNING->INH
        r.learning_latency_ms = 50.0;
        r.recall_latency_ms = 14.0;
    }
    r.full_static_synapses = r.static_synapses + r.recurrent_inhibitory_synapses;
    return r;
}

ResourceCounts tally_topology(ModelKind kind, const NetworkTopology& topology, std::uint32_t n) {
    ResourceCounts r;
    r.neurons = topology.neuron_count();
    r.stdp_synapses = topology.plastic_synapses.size();
    const Population& pc = topology.population("PC");
    std::uint64_t recurrent_inh = 0;
    for (const auto& s : topology.static_synapses) {
        const bool pre_pc = s.pre >= pc.first && s.pre < pc.first + pc.size;
        const bool post_pc = s.post >= pc.first && s.post < pc.first + pc.size;
        if (pre_pc && post_pc && s.receptor == Receptor::inhibitory) ++recurrent_inh;
    }
    r.recurrent_inhibitory_synapses = recurrent_inh;
    r.full_static_synapses = topology.static_synapses.size();
    r.static_synapses = r.full_static_synapses - recurrent_inh;
    const ResourceCounts formula = count_resources(kind, n);
    r.learning_latency_ms = formula.learning_latency_ms;
    r.recall_latency_ms = formula.recall_latency_ms;
    return r;
}

// ---------------------------------------------------------------------------

BuiltSchedule build_oscillatory_schedule(const OscillatoryConfig& cfg,
                                         const std::vector<ScheduledOp>& ops) {
    BuiltSchedule out;
    double last_end = cfg.start_ms;
    for (const auto& op : ops) {
        if (op.indices.empty()) throw std::invalid_argument("operation with no indices");
        if (*op.indices.rbegin() >= cfg.n)
            throw std::invalid_argument("operation index out of range");
        const double start = op.slot_start;
        if (start + 1e-9 < last_end)
            throw std::invalid_argument("operation slots overlap");
        const int deliveries = op.deliveries;
        for (int d = 0; d < deliveries; ++d)
            for (std::uint32_t idx : op.indices)
                out.stimuli.add("DG", idx, start + d * op.delivery_stride);
        const double cue_end = start + (deliveries - 1) * op.delivery_stride;
        if (!op.is_learn) {
            RecallWindow w;
            w.cue = op.indices;
            w.slot_begin_ms = start;
            w.cue_end_ms = cue_end;
            w.begin_ms = cue_end + 1.0;
            w.end_ms = start + cfg.slot_ms;
            out.windows.push_back(w);
        }
        last_end = start + cfg.slot_ms;
    }
    out.duration_ms = last_end + 2.0;
    return out;
}

BuiltSchedule build_regulated_learning_schedule(const RegulatedConfig& cfg,
                                                const std::vector<Pattern>& patterns) {
    if (patterns.empty()) throw std::invalid_argument("no patterns to learn");
    BuiltSchedule out;
    const double l0 = cfg.start_ms;
    double phase_end = l0;
    for (std::size_t k = 0; k < patterns.size(); ++k) {
        const Pattern& p = patterns[k];
        p.validate();
        if (p.n != cfg.n) throw std::invalid_argument("pattern population size mismatch");
        const double slot = l0 + k * cfg.learn_slot_ms;
        // Interneurons free-run at one spike per 2 ms (refractory-limited
        // under the every-ms learning drive). Even slot strides and spacings
        // keep the recurrent volleys landing on the same step as the
        // interneuron veto on non-members.
        for (int pres = 0; pres < cfg.presentations; ++pres) {
            const double p0 = slot + pres * cfg.presentation_spacing;
            for (int d = 0; d < cfg.delivery_ms; ++d)
                for (std::uint32_t idx : p.active) out.stimuli.add("DG", idx, p0 + d);
        }
        phase_end = slot + cfg.learn_slot_ms;
    }
    for (double t = l0; t < phase_end; t += 1.0) out.stimuli.add("LEARNING", 0, t);
    out.duration_ms = phase_end + 2.0;
    return out;
}

BuiltSchedule build_regulated_recall_schedule(const RegulatedConfig& cfg,
                                              const std::vector<ScheduledOp>& recalls) {
    BuiltSchedule out;
    double last_end = cfg.start_ms;
    for (const auto& op : recalls) {
        if (op.is_learn) throw std::invalid_argument("learning op in a recall schedule");
        if (op.indices.empty()) throw std::invalid_argument("empty cue");
        if (*op.indices.rbegin() >= cfg.n) throw std::invalid_argument("cue index out of range");
        const double start = op.slot_start;
        if (start + 1e-9 < last_end) throw std::invalid_argument("recall slots overlap");
        for (int d = 0; d < op.deliveries; ++d)
            for (std::uint32_t idx : op.indices)
                out.stimuli.add("DG", idx, start + d * op.delivery_stride);
        RecallWindow w;
        w.cue = op.indices;
        w.slot_begin_ms = start;
        w.cue_end_ms = start + (op.deliveries - 1) * op.delivery_stride;
        w.begin_ms = w.cue_end_ms + 1.0;
        w.end_ms = start + cfg.recall_slot_ms;
        out.windows.push_back(w);
        last_end = start + cfg.recall_slot_ms;
    }
    out.duration_ms = last_end + 2.0;
    return out;
}

// ---------------------------------------------------------------------------

MemoryModel MemoryModel::oscillatory(const OscillatoryConfig& cfg) {
    cfg.validate();
    MemoryModel m(ModelKind::oscillatory);
    m.osc_ = cfg;
    return m;
}

MemoryModel MemoryModel::regulated(const RegulatedConfig& cfg) {
    cfg.validate();
    MemoryModel m(ModelKind::regulated);
    m.reg_ = cfg;
    return m;
}

std::uint32_t MemoryModel::n() const {
    return kind_ == ModelKind::oscillatory ? osc_.n : reg_.n;
}

std::vector<PlasticWeight> MemoryModel::learn(const std::vector<Pattern>& patterns) {
    if (patterns.empty()) throw std::invalid_argument("learn: empty pattern list");
    for (const auto& p : patterns) {
        p.validate();
        if (p.n != n()) throw std::invalid_argument("learn: pattern size mismatch");
    }
    if (kind_ == ModelKind::oscillatory) {
        if (!osc_ops_.empty() && !osc_ops_.back().is_learn)
            throw std::invalid_argument("oscillatory model: learning must precede recall");
        double slot = osc_.start_ms + osc_ops_.size() * osc_.slot_ms;
        for (const auto& p : patterns) {
            ScheduledOp op;
            op.is_learn = true;
            op.indices = p.active;
            op.slot_start = slot;
            op.deliveries = osc_.presentations;
            osc_ops_.push_back(op);
            slot += osc_.slot_ms;
        }
        BuiltSchedule sched = build_oscillatory_schedule(osc_, osc_ops_);
        SimulationConfig cfg;
        cfg.duration_ms = sched.duration_ms;
        NetworkTopology topo = build_oscillatory(osc_);
        SimulationResult r = run_simulation(topo, sched.stimuli, cfg);
        snapshot_ = r.final_weights;
    } else {
        BuiltSchedule sched = build_regulated_learning_schedule(reg_, patterns);
        SimulationConfig cfg;
        cfg.duration_ms = sched.duration_ms;
        NetworkTopology topo = build_regulated(reg_);
        SimulationResult r = run_simulation(topo, sched.stimuli, cfg);
        snapshot_ = r.final_weights;
    }
    learned_ = true;
    return snapshot_;
}

RecallOutcome MemoryModel::recall(const Cue& cue, int presentations) {
    cue.validate(n());
    if (!learned_) throw std::invalid_argument("recall before learn");
    if (kind_ == ModelKind::oscillatory) {
        ScheduledOp op;
        op.is_learn = false;
        op.indices = cue.active;
        op.slot_start = osc_.start_ms + osc_ops_.size() * osc_.slot_ms;
        op.deliveries = presentations > 0 ? presentations : osc_.cue_deliveries;
        osc_ops_.push_back(op);
        return run_oscillatory_timeline();
    }
    ScheduledOp op;
    op.is_learn = false;
    op.indices = cue.active;
    op.slot_start = reg_.start_ms + reg_recalls_.size() * reg_.recall_slot_ms;
    op.deliveries = presentations > 0 ? presentations : 1;
    op.delivery_stride = 4.0;  // refractory-safe spacing for repeated cues
    reg_recalls_.push_back(op);
    return run_regulated_recalls();
}

RecallOutcome MemoryModel::run_oscillatory_timeline() {
    BuiltSchedule sched = build_oscillatory_schedule(osc_, osc_ops_);
    SimulationConfig cfg;
    cfg.duration_ms = sched.duration_ms;
    NetworkTopology topo = build_oscillatory(osc_);
    SimulationResult r = run_simulation(topo, sched.stimuli, cfg);
    snapshot_ = r.final_weights;
    RecallOutcome out;
    out.window = sched.windows.back();
    out.recalled = r.spikes.active_in_window("PC", out.window.begin_ms, out.window.end_ms);
    for (std::uint32_t c : out.window.cue) out.recalled.erase(c);
    out.record = r.spikes;
    return out;
}

RecallOutcome MemoryModel::run_regulated_recalls() {
    NetworkTopology learned = build_regulated(reg_);
    FreezeResult frozen = freeze(learned, &snapshot_);
    BuiltSchedule sched = build_regulated_recall_schedule(reg_, reg_recalls_);
    SimulationConfig cfg;
    cfg.duration_ms = sched.duration_ms;
    SimulationResult r = run_simulation(frozen.topology, sched.stimuli, cfg);
    RecallOutcome out;
    out.window = sched.windows.back();
    out.recalled = r.spikes.active_in_window("PC", out.window.begin_ms, out.window.end_ms);
    for (std::uint32_t c : out.window.cue) out.recalled.erase(c);
    out.record = r.spikes;
    return out;
}

}  // namespace ca3sim
