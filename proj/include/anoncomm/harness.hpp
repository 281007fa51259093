#ifndef ANONCOMM_HARNESS_HPP
#define ANONCOMM_HARNESS_HPP

#include <atomic>
#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "anoncomm/protocol.hpp"
#include "anoncomm/transport.hpp"

namespace anoncomm {

enum class TransportKind { in_process, stream };

struct SimConfig {
  SchemeParams params;
  std::uint32_t rounds = 1;
  TransportKind transport = TransportKind::in_process;
  std::uint64_t seed = 0;
  bool audit = false;
  // Test hook: dealer aborts this round after announcing it, exercising the
  // mid-round SHUTDOWN path.
  std::optional<std::uint32_t> abort_at_round;
};

struct RoundLog {
  std::uint32_t round_id = 0;
  bool completed = false;
  std::string fail_cause;
  std::vector<std::vector<std::uint32_t>> transcript;  // K signals, length N
  std::vector<std::uint32_t> decoded;
  bool correct = false;
  std::optional<std::uint32_t> theta;  // audit mode only
  double receiver_seconds = 0.0;       // never part of the canonical dump
};

struct SimulationResult {
  std::vector<RoundLog> logs;
  bool audit_mode = false;
  std::uint64_t messages_sent = 0;
  std::uint64_t audit_violations = 0;
  std::vector<std::string> violation_details;
};

namespace harness_detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::vector<std::uint16_t> to_u16(const SymbolVector& v) {
  std::vector<std::uint16_t> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out[i] = static_cast<std::uint16_t>(v[i]);
  return out;
}

inline SymbolVector from_u16(const std::vector<std::uint16_t>& v, std::uint32_t p) {
  std::vector<std::uint32_t> out(v.begin(), v.end());
  return SymbolVector(std::move(out), p);
}

}  // namespace harness_detail

/// Run the protocol as K+2 actors (dealer 0, transmitters 1..K, receiver K+1)
/// exchanging framed messages over the chosen fabric. The dealer doubles as
/// round coordinator: it draws theta and the seed, and each transmitter only
/// ever learns its own share and desire flag.
inline SimulationResult run_simulation(const SimConfig& cfg) {
  cfg.params.validate();
  if (cfg.rounds < 1) throw Error("rounds must be >= 1");
  const std::uint32_t K = cfg.params.K;
  const std::uint32_t p = cfg.params.p;
  const std::uint16_t receiver_id = static_cast<std::uint16_t>(K + 1);

  std::vector<std::uint16_t> actors;
  for (std::uint16_t id = 0; id <= K + 1; ++id) actors.push_back(id);

  std::unique_ptr<Transport> transport;
  if (cfg.transport == TransportKind::in_process)
    transport = std::make_unique<InProcessTransport>();
  else
    transport = std::make_unique<StreamTransport>(actors);

  SimulationResult result;
  result.audit_mode = cfg.audit;

  // Traffic audit: transmitters may only receive share/flag/shutdown traffic
  // (theta itself never flows to them) and the receiver may only receive
  // ROUND_BEGIN and SIGNAL payloads.
  std::mutex audit_mu;
  std::atomic<std::uint64_t> messages{0};
  transport->set_observer([&](std::uint16_t from, std::uint16_t to,
                              const WireMessage& msg) {
    messages.fetch_add(1, std::memory_order_relaxed);
    auto violation = [&](const std::string& why) {
      std::lock_guard<std::mutex> lock(audit_mu);
      ++result.audit_violations;
      if (result.violation_details.size() < 16)
        result.violation_details.push_back(
            "msg " + std::to_string(static_cast<int>(msg.type)) + " from " +
            std::to_string(from) + " to " + std::to_string(to) + ": " + why);
    };
    if (to >= 1 && to <= K) {
      if (msg.type != MsgType::deal_share && msg.type != MsgType::desire_flag &&
          msg.type != MsgType::shutdown)
        violation("unexpected message type for a transmitter");
      if (msg.type == MsgType::desire_flag &&
          (msg.symbols.size() != 1 || msg.symbols[0] > 1))
        violation("desire flag must be a single boolean symbol");
    } else if (to == receiver_id) {
      if (msg.type != MsgType::round_begin && msg.type != MsgType::signal &&
          msg.type != MsgType::shutdown)
        violation("unexpected message type for the receiver");
      if (msg.type == MsgType::signal && msg.symbols.size() != cfg.params.N)
        violation("signal payload must have N symbols");
    } else if (to == 0) {
      if (msg.type != MsgType::decoded)
        violation("unexpected message type for the dealer");
    }
  });

  // Per-round ground truth gathered outside the message fabric, used only to
  // assemble logs after the run.
  std::vector<std::uint32_t> dealer_theta(cfg.rounds, 0);
  std::vector<std::vector<std::vector<std::uint32_t>>> tx_w(
      K, std::vector<std::vector<std::uint32_t>>(cfg.rounds));
  std::vector<RoundLog> receiver_logs;

  auto dealer = [&] {
    std::mt19937_64 rng(harness_detail::splitmix64(cfg.seed));
    std::uniform_int_distribution<std::uint32_t> theta_dist(1, K);
    std::uniform_int_distribution<std::uint32_t> sym_dist(0, p - 1);
    for (std::uint32_t r = 0; r < cfg.rounds; ++r) {
      WireMessage begin;
      begin.type = MsgType::round_begin;
      begin.round_id = r;
      begin.sender_id = 0;
      begin.p = static_cast<std::uint16_t>(p);
      transport->send(0, receiver_id, begin);

      if (cfg.abort_at_round && *cfg.abort_at_round == r) {
        for (std::uint16_t i = 1; i <= K; ++i) {
          WireMessage down;
          down.type = MsgType::shutdown;
          down.round_id = r;
          down.p = static_cast<std::uint16_t>(p);
          transport->send(0, i, down);
        }
        return;
      }

      const std::uint32_t theta = theta_dist(rng);
      dealer_theta[r] = theta;
      std::vector<std::uint32_t> raw(cfg.params.seed_length());
      for (auto& s : raw) s = sym_dist(rng);
      const auto shares = deal(cfg.params, Seed{SymbolVector(std::move(raw), p)});
      for (std::uint16_t i = 1; i <= K; ++i) {
        WireMessage share_msg;
        share_msg.type = MsgType::deal_share;
        share_msg.round_id = r;
        share_msg.sender_id = 0;
        share_msg.p = static_cast<std::uint16_t>(p);
        share_msg.symbols = harness_detail::to_u16(shares[i - 1].z);
        transport->send(0, i, share_msg);

        WireMessage flag_msg;
        flag_msg.type = MsgType::desire_flag;
        flag_msg.round_id = r;
        flag_msg.sender_id = 0;
        flag_msg.p = static_cast<std::uint16_t>(p);
        flag_msg.symbols = {static_cast<std::uint16_t>(i == theta ? 1 : 0)};
        transport->send(0, i, flag_msg);
      }
      transport->recv(0, receiver_id);  // DECODED, closes the round
    }
    for (std::uint16_t i = 1; i <= K; ++i) {
      WireMessage down;
      down.type = MsgType::shutdown;
      down.round_id = cfg.rounds;
      down.p = static_cast<std::uint16_t>(p);
      transport->send(0, i, down);
    }
    WireMessage down;
    down.type = MsgType::shutdown;
    down.round_id = cfg.rounds;
    down.p = static_cast<std::uint16_t>(p);
    transport->send(0, receiver_id, down);
  };

  auto transmitter = [&](std::uint16_t id) {
    std::mt19937_64 rng(harness_detail::splitmix64(cfg.seed ^ (0x1000ull + id)));
    std::uniform_int_distribution<std::uint32_t> sym_dist(0, p - 1);
    for (;;) {
      const WireMessage first = transport->recv(id, 0);
      if (first.type == MsgType::shutdown) {
        // propagate so a receiver blocked on this transmitter unblocks
        WireMessage down = first;
        down.sender_id = id;
        transport->send(id, receiver_id, down);
        return;
      }
      if (first.type != MsgType::deal_share)
        throw Error("transmitter expected DEAL_SHARE");
      const WireMessage flag_msg = transport->recv(id, 0);
      if (flag_msg.type != MsgType::desire_flag)
        throw Error("transmitter expected DESIRE_FLAG");
      const bool desired = flag_msg.symbols.at(0) == 1;

      std::vector<std::uint32_t> w(cfg.params.L);
      for (auto& s : w) s = sym_dist(rng);
      tx_w[id - 1][first.round_id] = w;

      const Share share{id, harness_detail::from_u16(first.symbols, p)};
      const SymbolVector x =
          encode(id, DesireFlag{desired}, Message{SymbolVector(w, p)}, share);
      WireMessage sig;
      sig.type = MsgType::signal;
      sig.round_id = first.round_id;
      sig.sender_id = id;
      sig.p = static_cast<std::uint16_t>(p);
      sig.symbols = harness_detail::to_u16(x);
      transport->send(id, receiver_id, sig);
    }
  };

  auto receiver = [&] {
    for (;;) {
      const WireMessage begin = transport->recv(receiver_id, 0);
      if (begin.type == MsgType::shutdown) return;
      if (begin.type != MsgType::round_begin)
        throw Error("receiver expected ROUND_BEGIN");
      const auto start = std::chrono::steady_clock::now();
      RoundLog log;
      log.round_id = begin.round_id;
      Transcript y;
      bool aborted = false;
      for (std::uint16_t i = 1; i <= K; ++i) {
        const WireMessage sig = transport->recv(receiver_id, i);
        if (sig.type == MsgType::shutdown) {
          aborted = true;
          break;
        }
        if (sig.type != MsgType::signal) throw Error("receiver expected SIGNAL");
        y.signals.push_back(harness_detail::from_u16(sig.symbols, p));
      }
      if (aborted) {
        log.completed = false;
        log.fail_cause = "shutdown mid-round";
        receiver_logs.push_back(std::move(log));
        return;
      }
      const Message decoded = decode(y);
      log.completed = true;
      for (const auto& sig : y.signals) log.transcript.push_back(sig.elems());
      log.decoded = decoded.w.elems();
      log.receiver_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
              .count();
      receiver_logs.push_back(std::move(log));

      WireMessage done;
      done.type = MsgType::decoded;
      done.round_id = begin.round_id;
      done.sender_id = receiver_id;
      done.p = static_cast<std::uint16_t>(p);
      done.symbols = harness_detail::to_u16(decoded.w);
      transport->send(receiver_id, 0, done);
    }
  };

  std::vector<std::thread> threads;
  threads.emplace_back(dealer);
  for (std::uint16_t i = 1; i <= K; ++i) threads.emplace_back(transmitter, i);
  threads.emplace_back(receiver);
  for (auto& t : threads) t.join();

  for (auto& log : receiver_logs) {
    if (log.completed) {
      const std::uint32_t theta = dealer_theta[log.round_id];
      log.correct = log.decoded == tx_w[theta - 1][log.round_id];
      if (cfg.audit) log.theta = theta;
    }
    result.logs.push_back(std::move(log));
  }
  result.messages_sent = messages.load();
  return result;
}

/// Canonical line-delimited serialization; timing data is deliberately
/// excluded so runs over different transports compare byte for byte.
inline std::string serialize_round_logs(const std::vector<RoundLog>& logs,
                                        bool include_timing = false) {
  std::ostringstream os;
  for (const auto& log : logs) {
    os << "{\"round\":" << log.round_id
       << ",\"completed\":" << (log.completed ? "true" : "false");
    if (!log.completed) os << ",\"fail_cause\":\"" << log.fail_cause << "\"";
    if (log.completed) {
      os << ",\"transcript\":[";
      for (std::size_t i = 0; i < log.transcript.size(); ++i) {
        os << (i ? ",[" : "[");
        for (std::size_t j = 0; j < log.transcript[i].size(); ++j)
          os << (j ? "," : "") << log.transcript[i][j];
        os << "]";
      }
      os << "],\"decoded\":[";
      for (std::size_t j = 0; j < log.decoded.size(); ++j)
        os << (j ? "," : "") << log.decoded[j];
      os << "],\"correct\":" << (log.correct ? "true" : "false");
      if (log.theta) os << ",\"theta\":" << *log.theta;
      if (include_timing) os << ",\"receiver_seconds\":" << log.receiver_seconds;
    }
    os << "}\n";
  }
  return os.str();
}

struct ReceiverViewEntry {
  std::vector<std::vector<std::uint32_t>> transcript;
  std::vector<std::uint32_t> decoded;
};

/// What the receiver legitimately saw. Refuses audit-mode results, which
/// carry theta and would leak it into downstream datasets.
inline std::vector<ReceiverViewEntry> receiver_view_dump(
    const SimulationResult& result) {
  if (result.audit_mode)
    throw Error("receiver_view_dump refuses audit-mode logs (they contain theta)");
  std::vector<ReceiverViewEntry> out;
  for (const auto& log : result.logs) {
    if (!log.completed) continue;
    out.push_back(ReceiverViewEntry{log.transcript, log.decoded});
  }
  return out;
}

/// Coarse sampling screen: chi-squared statistic of the transcript histogram
/// against the uniform distribution over p^(K*N) tuples. The exact uniformity
/// claim is established by the enumeration-based verifier; this only flags
/// gross deviations in sampled runs.
inline double transcript_chi_squared(const std::vector<ReceiverViewEntry>& dump,
                                     const SchemeParams& params) {
  params.validate();
  std::uint64_t cells = 1;
  for (std::uint32_t i = 0; i < params.K * params.N; ++i) cells *= params.p;
  std::map<std::vector<std::uint32_t>, std::uint64_t> hist;
  for (const auto& entry : dump) {
    std::vector<std::uint32_t> flat;
    for (const auto& sig : entry.transcript)
      flat.insert(flat.end(), sig.begin(), sig.end());
    ++hist[flat];
  }
  const double expected = static_cast<double>(dump.size()) / static_cast<double>(cells);
  if (expected <= 0.0) return 0.0;
  double chi2 = cells > hist.size()
                    ? (cells - hist.size()) * expected  // empty cells
                    : 0.0;
  for (const auto& [flat, c] : hist) {
    const double d = static_cast<double>(c) - expected;
    chi2 += d * d / expected;
  }
  return chi2;
}

}  // namespace anoncomm

#endif  // ANONCOMM_HARNESS_HPP
