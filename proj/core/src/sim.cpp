#include "taxiq/sim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <queue>
#include <stdexcept>
#include <thread>

#include "taxiq/errors.hpp"
#include "taxiq/match_queue.hpp"
#include "taxiq/rng.hpp"
#include "taxiq/road_queue.hpp"

namespace taxiq {

namespace {

enum Purpose : std::uint64_t {
  kPurposePassenger = 0,
  kPurposeVehicleAts,
  kPurposeVehicleTts,
  kPurposeSplit,
  kPurposeSvcAts,
  kPurposeSvcTts,
  kPurposeRoadSvc,
  kPurposeRouting,
};

enum EventKind : int {
  kEvPassenger = 0,
  kEvVehicle = 1,
  kEvMatchDone = 2,
  kEvRoadDone = 3,
  kEvWarmup = 4,
};

struct Event {
  double time = 0.0;
  int kind = 0;
  std::uint64_t seq = 0;  // schedule order, breaks (time, kind) ties
  int zone = 0;
  int aux = 0;   // service for passenger/vehicle/match events
  int slot = 0;  // road entity arena slot for kEvRoadDone
};

struct EventAfter {
  bool operator()(const Event& a, const Event& b) const {
    if (a.time != b.time) return a.time > b.time;
    if (a.kind != b.kind) return a.kind > b.kind;
    return a.seq > b.seq;
  }
};

// Piecewise-constant integrator over the measurement window.
struct TimeAvg {
  double acc = 0.0;
  double last_t = 0.0;
  double value = 0.0;

  void set(double t, double v) {
    acc += value * (t - last_t);
    last_t = t;
    value = v;
  }
  void reset(double t) {
    acc = 0.0;
    last_t = t;
  }
  double mean(double t_end, double window) {
    set(t_end, value);
    return window > 0.0 ? acc / window : 0.0;
  }
};

struct QueueAcc {
  TimeAvg busy;
  TimeAvg in_system;
  TimeAvg waiting;
  double w_sum = 0.0;
  double wq_sum = 0.0;
  long long w_n = 0;
  long long completions = 0;

  void reset(double t) {
    busy.reset(t);
    in_system.reset(t);
    waiting.reset(t);
    w_sum = wq_sum = 0.0;
    w_n = completions = 0;
  }
};

struct WaitingPair {
  double formed = 0.0;
  std::uint64_t seq = 0;
};

struct MatchQueueState {
  long passengers = 0;  // unpaired backlog
  long vehicles = 0;
  std::deque<WaitingPair> pair_queue;
  bool busy = false;
  double inservice_formed = 0.0;
  double inservice_started = 0.0;
  std::uint64_t inservice_seq = 0;
  std::uint64_t next_pair_seq = 0;
  std::uint64_t next_served_seq = 0;  // FCFS check
  long long pairs_formed_total = 0;   // never reset by warmup
  QueueAcc acc;
  TimeAvg p_backlog;
  TimeAvg v_backlog;
};

struct RoadEntity {
  double queue_entry = 0.0;  // entry to the current road queue
  double first_entry = 0.0;  // start of the road journey
  double pickup_time = 0.0;
  double search_time = 0.0;
  int origin = 0;
  Service service = Service::ats;
};

struct RoadQueueState {
  int busy = 0;
  std::deque<int> waiting;  // arena slots
  QueueAcc acc;
  long long exits_by_class[kVehicleClassCount] = {0, 0, 0, 0};
};

struct RepQueue {
  double rho = 0, l = 0, lq = 0, w = 0, wq = 0, thr = 0;
  long long completed = 0;
};

struct RepZone {
  RepQueue q[3];  // match_ats, match_tts, road
  double backlog[4] = {0, 0, 0, 0};  // p_ats, p_tts, v_ats, v_tts
  long long exits[kVehicleClassCount] = {0, 0, 0, 0};
};

struct RepResult {
  std::vector<RepZone> zones;
  long long vehicles_arrived = 0;
  long long vehicles_exited = 0;
  long long vehicles_in_system = 0;
  std::vector<long long> pairs_formed;  // zone-major, (ats, tts)
  std::vector<TripRecord> trips;
};

class Replication {
 public:
  Replication(const NetworkConfig& config, const SimParams& params, int rep)
      : config_(config), params_(params), n_(config.size()) {
    streams_.reserve(n_ * 8);
    for (std::size_t z = 0; z < n_; ++z) {
      for (std::uint64_t p = 0; p < 8; ++p) {
        streams_.emplace_back(RngStream::derive(params.seed, static_cast<std::uint64_t>(rep), z, p));
      }
    }
    match_.assign(2 * n_, MatchQueueState{});
    road_.assign(n_, RoadQueueState{});
  }

  RepResult run() {
    const double horizon = params_.horizon;
    const double warmup = params_.effective_warmup();
    if (!(horizon > 0.0) || warmup < 0.0 || warmup >= horizon) {
      throw std::invalid_argument("simulate: need 0 <= warmup < horizon");
    }

    for (std::size_t z = 0; z < n_; ++z) {
      const ZoneParams& p = config_.params[z];
      if (p.lambda_p > 0.0) {
        schedule(stream(z, kPurposePassenger).exponential(p.lambda_p), kEvPassenger, static_cast<int>(z));
      }
      if (p.lambda_v_ats > 0.0) {
        schedule(stream(z, kPurposeVehicleAts).exponential(p.lambda_v_ats), kEvVehicle,
                 static_cast<int>(z), 0);
      }
      if (p.lambda_v_tts > 0.0) {
        schedule(stream(z, kPurposeVehicleTts).exponential(p.lambda_v_tts), kEvVehicle,
                 static_cast<int>(z), 1);
      }
    }
    if (warmup > 0.0) schedule(warmup, kEvWarmup, 0);

    while (!calendar_.empty()) {
      const Event ev = calendar_.top();
      if (ev.time > horizon) break;
      calendar_.pop();
      now_ = ev.time;
      switch (ev.kind) {
        case kEvPassenger: on_passenger(ev.zone); break;
        case kEvVehicle: on_vehicle(ev.zone, ev.aux == 0 ? Service::ats : Service::tts); break;
        case kEvMatchDone: on_match_done(ev.zone, ev.aux == 0 ? Service::ats : Service::tts); break;
        case kEvRoadDone: on_road_done(ev.zone, ev.slot); break;
        case kEvWarmup: on_warmup(); break;
      }
    }
    return finalize(horizon, warmup);
  }

 private:
  RngStream& stream(std::size_t zone, Purpose p) { return streams_[zone * 8 + p]; }
  MatchQueueState& match(std::size_t zone, Service s) {
    return match_[2 * zone + (s == Service::ats ? 0 : 1)];
  }

  void schedule(double t, int kind, int zone, int aux = 0, int slot = 0) {
    calendar_.push(Event{t, kind, next_seq_++, zone, aux, slot});
  }

  int alloc_slot() {
    if (!free_slots_.empty()) {
      const int s = free_slots_.back();
      free_slots_.pop_back();
      return s;
    }
    arena_.push_back({});
    return static_cast<int>(arena_.size()) - 1;
  }

  void on_passenger(int z) {
    const ZoneParams& p = config_.params[z];
    schedule(now_ + stream(z, kPurposePassenger).exponential(p.lambda_p), kEvPassenger, z);
    const Service s = stream(z, kPurposeSplit).bernoulli(p.p_ats) ? Service::ats : Service::tts;
    MatchQueueState& m = match(z, s);
    m.p_backlog.set(now_, static_cast<double>(++m.passengers));
    try_form(z, s);
  }

  void on_vehicle(int z, Service s) {
    const ZoneParams& p = config_.params[z];
    const double rate = s == Service::ats ? p.lambda_v_ats : p.lambda_v_tts;
    schedule(now_ + stream(z, s == Service::ats ? kPurposeVehicleAts : kPurposeVehicleTts).exponential(rate),
             kEvVehicle, z, s == Service::ats ? 0 : 1);
    ++vehicles_arrived_;
    if (params_.collect_trips) {
      TripRecord r;
      r.service = s;
      r.origin_zone = config_.zones[z].value;
      r.pickup_time = now_;
      r.vehicle_event = "new_online";
      trips_.push_back(std::move(r));
    }
    add_vehicle(z, s);
  }

  void add_vehicle(int z, Service s) {
    MatchQueueState& m = match(z, s);
    m.v_backlog.set(now_, static_cast<double>(++m.vehicles));
    try_form(z, s);
  }

  void try_form(int z, Service s) {
    MatchQueueState& m = match(z, s);
    while (m.passengers > 0 && m.vehicles > 0) {
      m.p_backlog.set(now_, static_cast<double>(--m.passengers));
      m.v_backlog.set(now_, static_cast<double>(--m.vehicles));
      ++m.pairs_formed_total;
      const std::uint64_t seq = m.next_pair_seq++;
      if (!m.busy) {
        start_match_service(z, s, now_, seq);
      } else {
        m.pair_queue.push_back({now_, seq});
        m.acc.waiting.set(now_, static_cast<double>(m.pair_queue.size()));
      }
      m.acc.in_system.set(now_, in_system(m));
    }
  }

  double in_system(const MatchQueueState& m) const {
    return static_cast<double>(m.pair_queue.size()) + (m.busy ? 1.0 : 0.0);
  }

  void start_match_service(int z, Service s, double formed, std::uint64_t seq) {
    MatchQueueState& m = match(z, s);
    if (params_.debug_checks && seq != m.next_served_seq) {
      throw std::logic_error("simulate: matching violated FCFS order");
    }
    ++m.next_served_seq;
    m.busy = true;
    m.inservice_formed = formed;
    m.inservice_started = now_;
    m.inservice_seq = seq;
    m.acc.busy.set(now_, 1.0);
    const double mu = s == Service::ats ? config_.params[z].mu_ats : config_.params[z].mu_tts;
    if (!(mu > 0.0)) {
      throw NotStableError("simulate: zone '" + config_.zones[z].value + "' has zero matching rate with demand");
    }
    schedule(now_ + stream(z, s == Service::ats ? kPurposeSvcAts : kPurposeSvcTts).exponential(mu),
             kEvMatchDone, z, s == Service::ats ? 0 : 1);
  }

  void on_match_done(int z, Service s) {
    MatchQueueState& m = match(z, s);
    m.acc.w_sum += now_ - m.inservice_formed;
    m.acc.wq_sum += m.inservice_started - m.inservice_formed;
    ++m.acc.w_n;
    ++m.acc.completions;

    const int slot = alloc_slot();
    RoadEntity& e = arena_[slot];
    e.first_entry = now_;
    e.pickup_time = now_;
    e.search_time = now_ - m.inservice_formed;
    e.origin = z;
    e.service = s;

    if (!m.pair_queue.empty()) {
      const WaitingPair next = m.pair_queue.front();
      m.pair_queue.pop_front();
      m.acc.waiting.set(now_, static_cast<double>(m.pair_queue.size()));
      start_match_service(z, s, next.formed, next.seq);
    } else {
      m.busy = false;
      m.acc.busy.set(now_, 0.0);
    }
    m.acc.in_system.set(now_, in_system(m));

    enter_road(z, slot);
  }

  void enter_road(int z, int slot) {
    RoadQueueState& r = road_[z];
    arena_[slot].queue_entry = now_;
    if (r.busy < config_.params[z].c_road) {
      ++r.busy;
      r.acc.busy.set(now_, static_cast<double>(r.busy));
      start_road_service(z, slot);
    } else {
      r.waiting.push_back(slot);
      r.acc.waiting.set(now_, static_cast<double>(r.waiting.size()));
    }
    r.acc.in_system.set(now_, static_cast<double>(r.busy) + static_cast<double>(r.waiting.size()));
  }

  void start_road_service(int z, int slot) {
    const double mu = config_.params[z].mu_road;
    if (!(mu > 0.0)) {
      throw NotStableError("simulate: zone '" + config_.zones[z].value + "' has zero road rate with flow");
    }
    schedule(now_ + stream(z, kPurposeRoadSvc).exponential(mu), kEvRoadDone, z, 0, slot);
  }

  void on_road_done(int z, int slot) {
    RoadQueueState& r = road_[z];
    if (r.busy < 1 || r.busy > config_.params[z].c_road) {
      throw std::logic_error("simulate: road server count out of range");
    }
    RoadEntity e = arena_[slot];
    r.acc.w_sum += now_ - e.queue_entry;
    ++r.acc.w_n;
    ++r.acc.completions;

    // Route the departing vehicle: drawn class row, then destination, then
    // the destination's capture branch.
    RngStream& rt = stream(z, kPurposeRouting);
    const int cls = rt.pick(config_.params[z].portions, kVehicleClassCount);
    const Matrix& row_matrix = config_.routing.by_class[cls];
    const int dest = rt.pick(&row_matrix.data[z * row_matrix.cols], static_cast<int>(row_matrix.cols));

    if (dest == static_cast<int>(n_)) {
      ++vehicles_exited_;
      ++r.exits_by_class[cls];
      emit_trip(e, z);
      free_slots_.push_back(slot);
    } else {
      const ZoneParams& dp = config_.params[dest];
      const double u = rt.uniform();
      if (u < dp.p_pick_ats) {
        emit_trip(e, dest);
        free_slots_.push_back(slot);
        add_vehicle(dest, Service::ats);
      } else if (u < dp.p_pick_ats + dp.p_pick_tts) {
        emit_trip(e, dest);
        free_slots_.push_back(slot);
        add_vehicle(dest, Service::tts);
      } else {
        enter_road(dest, slot);
      }
    }

    if (!r.waiting.empty()) {
      const int next = r.waiting.front();
      r.waiting.pop_front();
      r.acc.waiting.set(now_, static_cast<double>(r.waiting.size()));
      // Waited entities start service now; their queueing delay ends here.
      r.acc.wq_sum += now_ - arena_[next].queue_entry;
      start_road_service(z, next);
    } else {
      --r.busy;
      r.acc.busy.set(now_, static_cast<double>(r.busy));
    }
    r.acc.in_system.set(now_, static_cast<double>(r.busy) + static_cast<double>(r.waiting.size()));
  }

  void emit_trip(const RoadEntity& e, int dest) {
    if (!params_.collect_trips) return;
    TripRecord t;
    t.service = e.service;
    t.origin_zone = config_.zones[e.origin].value;
    t.dest_zone = config_.zones[dest].value;
    t.pickup_time = e.pickup_time;
    t.travel_time = std::max(now_ - e.first_entry, 1e-9);
    t.distance = 0.5 * t.travel_time;  // synthetic 30 km/h equivalent
    t.fare = 2.5 + 1.2 * t.distance;
    t.search_time = e.search_time;
    trips_.push_back(std::move(t));
  }

  void on_warmup() {
    for (auto& m : match_) {
      m.acc.reset(now_);
      m.p_backlog.reset(now_);
      m.v_backlog.reset(now_);
    }
    for (auto& r : road_) {
      r.acc.reset(now_);
      for (auto& e : r.exits_by_class) e = 0;
    }
  }

  RepResult finalize(double horizon, double warmup) {
    const double window = horizon - warmup;
    RepResult res;
    res.zones.resize(n_);
    res.pairs_formed.assign(2 * n_, 0);
    for (std::size_t z = 0; z < n_; ++z) {
      RepZone& out = res.zones[z];
      for (int si = 0; si < 2; ++si) {
        MatchQueueState& m = match_[2 * z + si];
        RepQueue& q = out.q[si];
        q.rho = m.acc.busy.mean(horizon, window);
        q.l = m.acc.in_system.mean(horizon, window);
        q.lq = m.acc.waiting.mean(horizon, window);
        q.w = m.acc.w_n > 0 ? m.acc.w_sum / m.acc.w_n : 0.0;
        q.wq = m.acc.w_n > 0 ? m.acc.wq_sum / m.acc.w_n : 0.0;
        q.thr = m.acc.completions / window;
        q.completed = m.acc.w_n;
        out.backlog[si] = m.p_backlog.mean(horizon, window);
        out.backlog[2 + si] = m.v_backlog.mean(horizon, window);
        res.pairs_formed[2 * z + si] = m.pairs_formed_total;
        vehicles_in_system_ += m.vehicles + static_cast<long long>(m.pair_queue.size()) + (m.busy ? 1 : 0);
      }
      RoadQueueState& r = road_[z];
      RepQueue& q = out.q[2];
      const int c = config_.params[z].c_road;
      q.rho = r.acc.busy.mean(horizon, window) / c;
      q.l = r.acc.in_system.mean(horizon, window);
      q.lq = r.acc.waiting.mean(horizon, window);
      q.w = r.acc.w_n > 0 ? r.acc.w_sum / r.acc.w_n : 0.0;
      q.wq = r.acc.w_n > 0 ? r.acc.wq_sum / r.acc.w_n : 0.0;
      q.thr = r.acc.completions / window;
      q.completed = r.acc.w_n;
      for (int k = 0; k < kVehicleClassCount; ++k) out.exits[k] = r.exits_by_class[k];
      vehicles_in_system_ += r.busy + static_cast<long long>(r.waiting.size());
    }
    res.vehicles_arrived = vehicles_arrived_;
    res.vehicles_exited = vehicles_exited_;
    res.vehicles_in_system = vehicles_in_system_;
    res.trips = std::move(trips_);
    return res;
  }

  const NetworkConfig& config_;
  const SimParams& params_;
  std::size_t n_;
  double now_ = 0.0;
  std::uint64_t next_seq_ = 0;
  std::vector<RngStream> streams_;
  std::vector<MatchQueueState> match_;  // 2 per zone: ats, tts
  std::vector<RoadQueueState> road_;
  std::vector<RoadEntity> arena_;
  std::vector<int> free_slots_;
  std::priority_queue<Event, std::vector<Event>, EventAfter> calendar_;
  long long vehicles_arrived_ = 0;
  long long vehicles_exited_ = 0;
  long long vehicles_in_system_ = 0;
  std::vector<TripRecord> trips_;
};

Estimate summarize(const std::vector<double>& xs) {
  Estimate e;
  const std::size_t r = xs.size();
  if (r == 0) return e;
  double sum = 0.0;
  for (double x : xs) sum += x;
  e.value = sum / r;
  if (r >= 2) {
    double ss = 0.0;
    for (double x : xs) ss += (x - e.value) * (x - e.value);
    e.se = std::sqrt(ss / (r - 1)) / std::sqrt(static_cast<double>(r));
  }
  return e;
}

}  // namespace

SimReport simulate(const NetworkConfig& config, const SimParams& params) {
  if (params.replications < 1) throw std::invalid_argument("simulate: need replications >= 1");
  if (params.jobs < 1) throw std::invalid_argument("simulate: need jobs >= 1");
  const int reps = params.replications;

  std::vector<RepResult> results(reps);
  const int workers = std::min(params.jobs, reps);
  if (workers <= 1) {
    for (int rep = 0; rep < reps; ++rep) {
      results[rep] = Replication(config, params, rep).run();
    }
  } else {
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex error_mu;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int rep = w; rep < reps; rep += workers) {
          try {
            results[rep] = Replication(config, params, rep).run();
          } catch (...) {
            std::lock_guard<std::mutex> lock(error_mu);
            if (!first_error) first_error = std::current_exception();
            return;
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  SimReport report;
  report.params = params;
  report.zones.resize(config.size());
  report.vehicle_conservation_ok = true;
  for (int rep = 0; rep < reps; ++rep) {
    const RepResult& r = results[rep];
    report.vehicles_arrived += r.vehicles_arrived;
    report.vehicles_exited += r.vehicles_exited;
    report.vehicles_in_system += r.vehicles_in_system;
    if (r.vehicles_arrived != r.vehicles_exited + r.vehicles_in_system) {
      report.vehicle_conservation_ok = false;
    }
    report.pairs_formed_per_rep.push_back(r.pairs_formed);
  }

  std::vector<double> xs(reps);
  auto gather = [&](auto&& get) {
    for (int rep = 0; rep < reps; ++rep) xs[rep] = get(results[rep]);
    return summarize(xs);
  };
  for (std::size_t z = 0; z < config.size(); ++z) {
    SimZoneReport& out = report.zones[z];
    SimQueueStats* queues[3] = {&out.match_ats, &out.match_tts, &out.road};
    for (int qi = 0; qi < 3; ++qi) {
      SimQueueStats& q = *queues[qi];
      q.rho = gather([&](const RepResult& r) { return r.zones[z].q[qi].rho; });
      q.l = gather([&](const RepResult& r) { return r.zones[z].q[qi].l; });
      q.lq = gather([&](const RepResult& r) { return r.zones[z].q[qi].lq; });
      q.w = gather([&](const RepResult& r) { return r.zones[z].q[qi].w; });
      q.wq = gather([&](const RepResult& r) { return r.zones[z].q[qi].wq; });
      q.throughput = gather([&](const RepResult& r) { return r.zones[z].q[qi].thr; });
      for (int rep = 0; rep < reps; ++rep) q.completed += results[rep].zones[z].q[qi].completed;
    }
    out.passenger_backlog_ats = gather([&](const RepResult& r) { return r.zones[z].backlog[0]; });
    out.passenger_backlog_tts = gather([&](const RepResult& r) { return r.zones[z].backlog[1]; });
    out.vehicle_backlog_ats = gather([&](const RepResult& r) { return r.zones[z].backlog[2]; });
    out.vehicle_backlog_tts = gather([&](const RepResult& r) { return r.zones[z].backlog[3]; });
    for (int rep = 0; rep < reps; ++rep) {
      for (int k = 0; k < kVehicleClassCount; ++k) {
        out.exits_by_class[k] += results[rep].zones[z].exits[k];
      }
    }
  }
  for (int rep = 0; rep < reps; ++rep) {
    for (auto& t : results[rep].trips) report.trips.push_back(std::move(t));
  }
  return report;
}

std::vector<ComparisonRow> compare_to_analytic(const NetworkConfig& config, const SimReport& report,
                                               const FlowSolution& flows, double flag_threshold) {
  std::vector<ComparisonRow> rows;
  auto add = [&](const std::string& zone, const char* queue, const char* metric, bool defined,
                 double analytic, double simulated) {
    ComparisonRow r;
    r.zone = zone;
    r.queue = queue;
    r.metric = metric;
    r.analytic_defined = defined;
    r.analytic = defined ? analytic : 0.0;
    r.simulated = simulated;
    if (defined) {
      r.rel_err = analytic != 0.0 ? std::fabs(simulated - analytic) / analytic
                                  : (simulated == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
      r.flagged = r.rel_err > flag_threshold;
    }
    rows.push_back(std::move(r));
  };

  for (std::size_t z = 0; z < config.size(); ++z) {
    const ZoneParams& p = config.params[z];
    const std::string& zid = config.zones[z].value;
    const SimZoneReport& sim = report.zones[z];

    const double mus[2] = {p.mu_ats, p.mu_tts};
    const double lambdas[2] = {flows.lambda_pv_ats[z], flows.lambda_pv_tts[z]};
    const SimQueueStats* stats[2] = {&sim.match_ats, &sim.match_tts};
    const char* names[2] = {"match_ats", "match_tts"};
    for (int si = 0; si < 2; ++si) {
      const bool stable = mus[si] > 0.0 && lambdas[si] < mus[si];
      QueueMetrics m;
      if (stable) m = mm1_metrics(Mm1Spec{lambdas[si], mus[si]});
      add(zid, names[si], "w", stable, m.w, stats[si]->w.value);
      add(zid, names[si], "l", stable, m.l, stats[si]->l.value);
    }
    const bool road_stable = p.mu_road > 0.0 && flows.lambda_road[z] < p.c_road * p.mu_road;
    QueueMetrics m;
    if (road_stable) m = mmc_metrics(MmcSpec{flows.lambda_road[z], p.mu_road, p.c_road});
    add(zid, "road", "w", road_stable, m.w, sim.road.w.value);
    add(zid, "road", "l", road_stable, m.l, sim.road.l.value);
  }
  return rows;
}

}  // namespace taxiq
