#ifndef CCA_MEASUREMENT_HPP
#define CCA_MEASUREMENT_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace cca::measurement {

enum class LockState { RogueLocked, Mush, RegularLocked };

inline const char* to_string(LockState s) {
    switch (s) {
        case LockState::RogueLocked: return "rogue";
        case LockState::Mush: return "mush";
        case LockState::RegularLocked: return "regular";
    }
    return "?";
}

/// Deterministic receiver: locks on whichever signal dominates the other
/// by at least its protection ratio. Acquiring a lock the receiver does
/// not currently hold costs an extra hysteresis margin.
struct ReceiverModel {
    double ccpr_rogue_db;    // threshold for the rogue signal
    double ccpr_regular_db;  // threshold for the regular signal
    double hysteresis_db = 0.0;

    static ReceiverModel symmetric(double true_ccpr_db,
                                   double hysteresis_db = 0.0) {
        return ReceiverModel{true_ccpr_db, true_ccpr_db, hysteresis_db};
    }

    /// ratio_db = p_rogue - p_regular at the receiver input.
    LockState evaluate(double ratio_db, LockState previous) const {
        double rogue_thr = ccpr_rogue_db;
        double reg_thr = ccpr_regular_db;
        if (previous != LockState::RogueLocked)
            rogue_thr += hysteresis_db;
        if (previous != LockState::RegularLocked)
            reg_thr += hysteresis_db;
        if (ratio_db >= rogue_thr)
            return LockState::RogueLocked;
        if (-ratio_db >= reg_thr)
            return LockState::RegularLocked;
        // holding an existing lock is allowed down to the plain threshold
        if (previous == LockState::RogueLocked && ratio_db >= ccpr_rogue_db)
            return LockState::RogueLocked;
        if (previous == LockState::RegularLocked && -ratio_db >= ccpr_regular_db)
            return LockState::RegularLocked;
        return LockState::Mush;
    }
};

struct MeasurementRun {
    double p_fixed_dbm;          // reference transmitter, constant
    double p_start_dbm;          // rogue starting power
    double p_stop_dbm;           // sweep floor
    double step_db = 1.0;
    int dwell_ticks = 10;        // the 10 s lock criterion, one tick per second

    void validate() const {
        if (!(step_db > 0.0))
            throw std::domain_error("step must be positive");
        if (dwell_ticks < 1)
            throw std::domain_error("dwell must be at least one tick");
        if (!(p_start_dbm > p_stop_dbm))
            throw std::domain_error("start power must exceed stop power");
    }
};

struct TracePoint {
    int step_index;
    double p_rogue_dbm;
    double ratio_db;
    LockState state;
};

struct TransitionNotObserved : std::runtime_error {
    explicit TransitionNotObserved(const std::string& what)
        : std::runtime_error(what) {}
};

struct EstimatedCcpr {
    double estimate_db;  // smallest stepped ratio with a full-dwell rogue lock
    std::vector<TracePoint> trace;
};

/// Step the rogue power down from p_start and watch the receiver's lock
/// state; a step counts as rogue-capable only if the lock holds for the
/// whole dwell.
inline EstimatedCcpr run_measurement(const ReceiverModel& rx,
                                     const MeasurementRun& cfg) {
    cfg.validate();
    EstimatedCcpr out{};
    bool saw_rogue = false;
    bool saw_regular = false;
    double last_locked_ratio = 0.0;
    LockState previous = LockState::Mush;  // unlocked at power-up
    int idx = 0;
    for (double p = cfg.p_start_dbm; p >= cfg.p_stop_dbm;
         p -= cfg.step_db, ++idx) {
        double ratio = p - cfg.p_fixed_dbm;
        LockState held = previous;
        bool stable = true;
        for (int tick = 0; tick < cfg.dwell_ticks; ++tick) {
            LockState s = rx.evaluate(ratio, held);
            if (tick > 0 && s != held)
                stable = false;
            held = s;
        }
        LockState reported = stable ? held : LockState::Mush;
        out.trace.push_back({idx, p, ratio, reported});
        if (reported == LockState::RogueLocked) {
            saw_rogue = true;
            last_locked_ratio = ratio;
        }
        if (reported == LockState::RegularLocked) {
            saw_regular = true;
            break;
        }
        previous = held;
    }
    if (!saw_rogue)
        throw TransitionNotObserved("rogue lock never observed; p_start too low");
    if (!saw_regular)
        throw TransitionNotObserved("sweep exhausted before regular re-lock");
    out.estimate_db = last_locked_ratio;
    return out;
}

/// State sequence of a completed run.
inline std::vector<LockState> three_state_trace(const EstimatedCcpr& run) {
    std::vector<LockState> states;
    states.reserve(run.trace.size());
    for (const auto& p : run.trace)
        states.push_back(p.state);
    return states;
}

}  // namespace cca::measurement

#endif
