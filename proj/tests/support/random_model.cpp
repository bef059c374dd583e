#include "random_model.hpp"

#include <algorithm>
#include <numeric>

namespace seqfmeca::testing {
namespace {

class Dice {
 public:
  explicit Dice(std::uint64_t seed) : rng_(seed) {}

  std::size_t below(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
  }
  std::size_t between(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

const std::vector<std::string> kWords = {
    "Set", "power", "supply", "pressure", "Init", "Check", "probe", "patient",
    "gel", "régler", "Überdruck", "ok", "stop", "go"};

std::string free_text(Dice& d) {
  std::string out;
  const std::size_t n = d.between(1, 4);
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out += ' ';
    out += d.pick(kWords);
  }
  switch (d.below(8)) {
    case 0: out += " \"quoted\""; break;
    case 1: out += " back\\slash"; break;
    case 2: out += "\ttab"; break;
    case 3: out += " a/b (c)"; break;
    default: break;
  }
  return out;
}

std::string identifier(Dice& d, std::string_view prefix) {
  return std::string(prefix) + std::to_string(d.below(1000));
}

Duration duration(Dice& d) {
  Duration x;
  x.value = static_cast<std::int64_t>(d.below(90));
  x.unit = static_cast<TimeUnit>(d.below(3));
  return x;
}

DurationBound bound(Dice& d) {
  DurationBound b;
  b.min = duration(d);
  b.max = b.min;
  b.max.value += static_cast<std::int64_t>(d.below(50));
  return b;
}

double decimal(Dice& d) {
  static const std::vector<double> scales = {1, 0.5, 0.1, 0.25, 0.01};
  const double raw = static_cast<double>(d.below(200)) - 50;
  return raw * d.pick(scales);
}

Parameter parameter(Dice& d, std::string name) {
  Parameter p;
  p.name = std::move(name);
  switch (d.below(5)) {
    case 0: {
      p.type = TypeTag::kNumber;
      NumericInterval iv;
      iv.lower = decimal(d);
      iv.upper = iv.lower + std::abs(decimal(d));
      if (d.chance(0.5)) iv.unit = d.pick(std::vector<std::string>{"bar", "ms", "mm", "deg"});
      p.domain = iv;
      break;
    }
    case 1:
      p.type = TypeTag::kNumber;
      break;
    case 2:
      p.type = TypeTag::kText;
      break;
    case 3:
      p.type = TypeTag::kBoolean;
      break;
    default: {
      p.type = TypeTag::kEnum;
      EnumSet set;
      const std::size_t n = d.between(1, 3);
      for (std::size_t i = 0; i < n; ++i) set.values.push_back("v" + std::to_string(i));
      p.domain = set;
      break;
    }
  }
  return p;
}

std::vector<Parameter> parameters(Dice& d, std::size_t max) {
  std::vector<Parameter> out;
  const std::size_t n = d.between(0, max);
  for (std::size_t i = 0; i < n; ++i) out.push_back(parameter(d, "p" + std::to_string(i)));
  return out;
}

}  // namespace

SystemModel random_model(std::uint64_t seed, const GeneratorLimits& limits) {
  Dice d(seed);
  SystemModel m;
  m.name = identifier(d, "Sys");

  std::vector<std::string> participants;
  const std::size_t actors = d.between(1, 3);
  for (std::size_t i = 0; i < actors; ++i) {
    Actor a;
    a.name = "A" + std::to_string(i);
    a.kind = d.chance(0.5) ? ActorKind::kHuman : ActorKind::kExternalSystem;
    m.actors.push_back(a);
    participants.push_back(a.name);
  }
  const std::size_t objects = d.between(1, 2);
  for (std::size_t i = 0; i < objects; ++i) {
    m.objects.push_back("O" + std::to_string(i));
    participants.push_back(m.objects.back());
  }

  const std::size_t use_cases = d.between(0, 3);
  for (std::size_t i = 0; i < use_cases; ++i) {
    UseCase u;
    u.name = "UC " + std::to_string(i) + " " + free_text(d);
    for (const auto& a : m.actors) {
      if (d.chance(0.5)) u.linked_actors.push_back(a.name);
    }
    if (d.chance(0.4)) u.description = free_text(d);
    if (d.chance(0.8)) {
      m.boundary.push_back({u.name, static_cast<Allocation>(d.below(3))});
    }
    m.use_cases.push_back(std::move(u));
  }

  const std::size_t interactions = d.between(1, limits.max_interactions);
  for (std::size_t k = 0; k < interactions; ++k) {
    Interaction in;
    in.name = "I" + std::to_string(k);
    if (!m.use_cases.empty() && d.chance(0.6)) in.realizes = d.pick(m.use_cases).name;

    const std::size_t n = d.between(1, limits.max_messages);
    // Predecessors only point backwards in a hidden order; declaration order
    // is a shuffle of it, so constraints are acyclic but not sorted.
    std::vector<Message> hidden;
    for (std::size_t i = 0; i < n; ++i) {
      Message msg;
      msg.id = "m" + std::to_string(i + 1);
      msg.sender = d.pick(participants);
      do {
        msg.receiver = d.pick(participants);
      } while (msg.receiver == msg.sender);
      msg.operation = d.chance(0.5) ? identifier(d, "op") : free_text(d);
      msg.parameters = parameters(d, limits.max_parameters);
      for (std::size_t j = 0; j < i; ++j) {
        if (d.chance(j + 1 == i ? 0.6 : 0.15)) msg.predecessors.push_back(hidden[j].id);
      }
      if (d.chance(0.3)) msg.send_deadline = bound(d);
      if (d.chance(0.25)) msg.treatment_deadline = bound(d);
      if (d.chance(0.35)) {
        Response r;
        r.values = parameters(d, 2);
        if (d.chance(0.5)) r.receive_deadline = bound(d);
        msg.response = std::move(r);
      }
      hidden.push_back(std::move(msg));
    }
    std::shuffle(hidden.begin(), hidden.end(), d.engine());
    in.messages = std::move(hidden);

    for (const auto& msg : in.messages) {
      for (const auto* p : {&msg.sender, &msg.receiver}) {
        if (std::find(in.participants.begin(), in.participants.end(), *p) ==
            in.participants.end()) {
          in.participants.push_back(*p);
        }
      }
    }
    if (d.chance(0.3)) {
      for (const auto& p : participants) {
        if (std::find(in.participants.begin(), in.participants.end(), p) ==
            in.participants.end()) {
          in.participants.push_back(p);
          break;
        }
      }
    }
    m.interactions.push_back(std::move(in));
  }
  return m;
}

std::string corrupt(const std::string& text, std::mt19937_64& rng) {
  std::string out = text;
  static const std::vector<std::string> inserts = {
      "{", "}", "(", ")", ";", ":", ",", "->", "..", "\"", "#", "\\", "\xff", "\xc3",
      "\xe2\x82", "msg", "after", "deadline", "send", "treat", "response", "system",
      "interaction", "9999999999999999999999s", "1.2.3", "-", "\r\n", std::string(1, '\0')};
  std::uniform_int_distribution<int> ops(0, 4);
  const int rounds = std::uniform_int_distribution<int>(1, 6)(rng);
  for (int r = 0; r < rounds; ++r) {
    const std::size_t pos =
        out.empty() ? 0 : std::uniform_int_distribution<std::size_t>(0, out.size())(rng);
    switch (ops(rng)) {
      case 0:
        out.insert(pos, inserts[std::uniform_int_distribution<std::size_t>(
                       0, inserts.size() - 1)(rng)]);
        break;
      case 1:
        if (pos < out.size()) {
          out.erase(pos, std::uniform_int_distribution<std::size_t>(1, 20)(rng));
        }
        break;
      case 2:
        if (pos < out.size()) out[pos] = static_cast<char>(rng() & 0xff);
        break;
      case 3:
        out.resize(pos);
        break;
      default: {
        const std::size_t from =
            std::uniform_int_distribution<std::size_t>(0, text.size() - 1)(rng);
        out.insert(pos, text.substr(from, 30));
        break;
      }
    }
  }
  return out;
}

std::string token_soup(std::mt19937_64& rng) {
  static const std::vector<std::string> tokens = {
      "system", "S", "{", "}", "actor", "A", "kind", "human", "external", ";",
      "object", "usecase", "\"t\"", "actors", "allocation", "inside", "interaction",
      "realizes", "participants", "msg", "m1", ":", "->", "op", "(", ")", "x", "number",
      "in", "0", "..", "5", "after", "deadline", "send", "1s", "treat", "response",
      "enum", "{a,b}", ",", "\n", " ", "#c\n", "\"", "\xf0\x9f", "@", "3min"};
  std::string out;
  const std::size_t n = std::uniform_int_distribution<std::size_t>(0, 80)(rng);
  for (std::size_t i = 0; i < n; ++i) {
    out += tokens[std::uniform_int_distribution<std::size_t>(0, tokens.size() - 1)(rng)];
    if (rng() % 3 == 0) out += ' ';
  }
  return out;
}

}  // namespace seqfmeca::testing
