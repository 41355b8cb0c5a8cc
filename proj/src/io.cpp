#include "lqss/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "lqss/errors.hpp"

namespace lqss::io {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorKind::validation, msg); }

const json& field(const json& j, const char* key, const std::string& ctx) {
  if (!j.is_object() || !j.contains(key)) bad(ctx + ": missing field '" + key + "'");
  return j.at(key);
}

Index index_field(const json& j, const char* key, const std::string& ctx) {
  const json& v = field(j, key, ctx);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    bad(ctx + ": field '" + key + "' must be a non-negative integer");
  return static_cast<Index>(v.get<long long>());
}

double number_field(const json& j, const char* key, const std::string& ctx) {
  const json& v = field(j, key, ctx);
  if (!v.is_number()) bad(ctx + ": field '" + key + "' must be a number");
  return v.get<double>();
}

void check_schema(const json& j, const std::string& ctx) {
  if (!j.is_object()) bad(ctx + ": expected a JSON object");
  if (j.contains("schema_version") && j["schema_version"] != kSchemaVersion) {
    std::ostringstream os;
    os << ctx << ": unsupported schema_version " << j["schema_version"].dump() << " (expected "
       << kSchemaVersion << ")";
    bad(os.str());
  }
}

void check_shape(const CMatrix& x, Index r, Index c, const std::string& what) {
  if (x.rows() != r || x.cols() != c) {
    std::ostringstream os;
    os << what << ": expected " << r << "x" << c << ", got " << x.rows() << "x" << x.cols();
    bad(os.str());
  }
}

const char* type_name(ModelType t) { return t == ModelType::passive ? "passive" : "general"; }

ModelType type_from(const json& j, const std::string& ctx) {
  const json& t = field(j, "type", ctx);
  if (t == "passive") return ModelType::passive;
  if (t == "general") return ModelType::general;
  bad(ctx + ": type must be \"passive\" or \"general\"");
}

}  // namespace

json to_json(cd z) { return json::array({z.real(), z.imag()}); }

json to_json(const CMatrix& x) {
  json rows = json::array();
  for (Index i = 0; i < x.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < x.cols(); ++j) row.push_back(to_json(x(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json to_json(const RVector& v) {
  json a = json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

cd complex_from_json(const json& j, const std::string& what) {
  if (j.is_number()) return cd(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return cd(j[0].get<double>(), j[1].get<double>());
  bad(what + ": complex entries must be [re, im] pairs or plain numbers");
}

CMatrix matrix_from_json(const json& j, const std::string& what) {
  if (!j.is_array()) bad(what + ": matrix must be an array of rows");
  const Index r = static_cast<Index>(j.size());
  const Index c = r > 0 ? static_cast<Index>(j[0].size()) : 0;
  CMatrix x(r, c);
  for (Index i = 0; i < r; ++i) {
    if (!j[i].is_array() || static_cast<Index>(j[i].size()) != c) {
      std::ostringstream os;
      os << what << ": row " << i << " has the wrong length";
      bad(os.str());
    }
    for (Index k = 0; k < c; ++k) {
      std::ostringstream os;
      os << what << "[" << i << "][" << k << "]";
      x(i, k) = complex_from_json(j[i][k], os.str());
    }
  }
  return x;
}

RVector vector_from_json(const json& j, const std::string& what) {
  if (!j.is_array()) bad(what + ": expected an array of numbers");
  RVector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) bad(what + ": expected an array of numbers");
    v(static_cast<Index>(i)) = j[i].get<double>();
  }
  return v;
}

json to_json(const DeviceSchedule& sched) {
  json devs = json::array();
  for (const auto& d : sched.devices) {
    if (const auto* bs = std::get_if<BeamSplitter>(&d)) {
      devs.push_back({{"type", "beamsplitter"},
                      {"channels", {bs->a, bs->b}},
                      {"params", {{"theta", bs->theta}, {"phi", bs->phi}, {"psi", bs->psi}, {"zeta", bs->zeta}}}});
    } else if (const auto* ps = std::get_if<PhaseShifter>(&d)) {
      devs.push_back({{"type", "phase_shifter"}, {"channels", {ps->channel}}, {"params", {{"phase", ps->phase}}}});
    } else {
      const auto& sq = std::get<Squeezer>(d);
      devs.push_back({{"type", "squeezer"},
                      {"channels", {sq.channel}},
                      {"params", {{"x", sq.x}, {"phi", sq.phi}, {"psi", sq.psi}}}});
    }
  }
  return {{"dimension", sched.dimension},
          {"kind", sched.kind == ScheduleKind::unitary ? "unitary" : "bogoliubov"},
          {"devices", devs}};
}

DeviceSchedule schedule_from_json(const json& j) {
  const std::string ctx = "schedule";
  DeviceSchedule s;
  s.dimension = index_field(j, "dimension", ctx);
  const json& kind = field(j, "kind", ctx);
  if (kind == "unitary") s.kind = ScheduleKind::unitary;
  else if (kind == "bogoliubov") s.kind = ScheduleKind::bogoliubov;
  else bad(ctx + ": kind must be \"unitary\" or \"bogoliubov\"");
  for (const json& d : field(j, "devices", ctx)) {
    const json& type = field(d, "type", ctx + " device");
    const json& ch = field(d, "channels", ctx + " device");
    const json& p = field(d, "params", ctx + " device");
    auto channel = [&](std::size_t i) -> Index {
      if (!ch.is_array() || ch.size() <= i || !ch[i].is_number_integer()) bad(ctx + ": bad device channels");
      return ch[i].get<Index>();
    };
    if (type == "beamsplitter") {
      BeamSplitter bs;
      bs.a = channel(0);
      bs.b = channel(1);
      bs.theta = number_field(p, "theta", ctx);
      bs.phi = number_field(p, "phi", ctx);
      bs.psi = number_field(p, "psi", ctx);
      bs.zeta = number_field(p, "zeta", ctx);
      s.devices.push_back(bs);
    } else if (type == "phase_shifter") {
      s.devices.push_back(PhaseShifter{channel(0), number_field(p, "phase", ctx)});
    } else if (type == "squeezer") {
      s.devices.push_back(Squeezer{channel(0), number_field(p, "x", ctx), number_field(p, "phi", ctx),
                                   number_field(p, "psi", ctx)});
    } else {
      bad(ctx + ": unknown device type " + type.dump());
    }
  }
  return s;
}

json to_json(const Model& model) {
  json j = {{"schema_version", kSchemaVersion}, {"type", type_name(model.type)},
            {"n", model.modes()}, {"m", model.channels()}};
  if (model.type == ModelType::passive) {
    j["M"] = to_json(model.passive.m);
    j["N"] = to_json(model.passive.n);
    j["S"] = to_json(model.passive.s);
  } else {
    j["M"] = to_json(model.general.m.full());
    j["N"] = to_json(model.general.n.full());
    j["S"] = to_json(model.general.s.full());
  }
  if (model.detunings.size()) j["detunings"] = to_json(model.detunings);
  if (model.interconnect_kappa.size()) j["interconnect_kappa"] = to_json(model.interconnect_kappa);
  return j;
}

Model model_from_json(const json& j, double tol) {
  const std::string ctx = "model";
  check_schema(j, ctx);
  Model model;
  model.type = type_from(j, ctx);
  const Index n = index_field(j, "n", ctx);
  const Index m = index_field(j, "m", ctx);
  const CMatrix mm = matrix_from_json(field(j, "M", ctx), "M");
  const CMatrix nn = matrix_from_json(field(j, "N", ctx), "N");
  const CMatrix ss = matrix_from_json(field(j, "S", ctx), "S");
  if (model.type == ModelType::passive) {
    check_shape(mm, n, n, "M");
    check_shape(nn, m, n, "N");
    check_shape(ss, m, m, "S");
    model.passive = {mm, nn, ss};
    model.passive.validate(tol);
  } else {
    check_shape(mm, 2 * n, 2 * n, "M");
    check_shape(nn, 2 * m, 2 * n, "N");
    check_shape(ss, 2 * m, 2 * m, "S");
    model.general.m = DoubledUpMatrix::from_full(mm, tol);
    model.general.n = DoubledUpMatrix::from_full(nn, tol);
    model.general.s = BogoliubovMatrix::from_full(ss, tol);
    model.general.validate(tol);
  }
  if (j.contains("detunings")) {
    model.detunings = vector_from_json(j["detunings"], "detunings");
    if (model.detunings.size() != n) bad("detunings: need one entry per mode");
  }
  if (j.contains("interconnect_kappa")) {
    model.interconnect_kappa = vector_from_json(j["interconnect_kappa"], "interconnect_kappa");
    if (model.interconnect_kappa.size() != n) bad("interconnect_kappa: need one entry per mode");
  }
  return model;
}

json to_json(const Netlist& net) {
  json cavities = json::array();
  for (std::size_t i = 0; i < net.bank.cavities.size(); ++i) {
    const Cavity& c = net.bank.cavities[i];
    json ports = json::array();
    for (const auto& p : c.ports)
      ports.push_back({{"channel", p.channel},
                       {"kappa", std::norm(p.passive)},
                       {"phi", std::arg(p.passive)},
                       {"g", std::norm(p.active)},
                       {"theta", std::arg(p.active)}});
    cavities.push_back({{"index", i},
                        {"role", c.role},
                        {"detuning", c.detuning},
                        {"interconnect_kappa", c.interconnect_kappa},
                        {"ports", ports}});
  }
  json devices = json::array();
  json order = json::array();
  for (const auto& st : net.bank.stages) {
    if (const auto* mix = std::get_if<ChannelMixer>(&st)) {
      order.push_back({{"device", devices.size()}});
      devices.push_back({{"type", "beamsplitter"},
                         {"channels", {mix->channel_a, mix->channel_b}},
                         {"matrix", to_json(mix->unitary)}});
    } else {
      order.push_back({{"cavity", std::get<Index>(st)}});
    }
  }
  json classes = json::array();
  for (const auto& c : net.classes) classes.push_back({{"kind", c.kind}, {"value", to_json(c.value)}});
  return {{"schema_version", kSchemaVersion},
          {"type", type_name(net.type)},
          {"n", net.modes},
          {"m", net.channels},
          {"pre_network", {{"matrix", to_json(net.pre)}, {"schedule", to_json(net.pre_schedule)}}},
          {"post_network", {{"matrix", to_json(net.post)}, {"schedule", to_json(net.post_schedule)}}},
          {"cavities", cavities},
          {"intra_block_devices", devices},
          {"bank_order", order},
          {"feedback", {{"R", to_json(net.feedback)}, {"schedule", to_json(net.feedback_schedule)}}},
          {"reduced",
           {{"N_hat", to_json(net.n_hat)}, {"M_hat", to_json(net.m_hat)}, {"M_conc", to_json(net.m_conc)},
            {"X", to_json(net.x)}}},
          {"provenance", {{"eigenvalue_classes", classes}, {"residuals", net.residuals}}}};
}

Netlist netlist_from_json(const json& j) {
  const std::string ctx = "netlist";
  check_schema(j, ctx);
  Netlist net;
  net.type = type_from(j, ctx);
  net.modes = index_field(j, "n", ctx);
  net.channels = index_field(j, "m", ctx);
  const Index dm = net.type == ModelType::passive ? net.channels : 2 * net.channels;
  const Index dn = net.type == ModelType::passive ? net.modes : 2 * net.modes;
  const json& pre = field(j, "pre_network", ctx);
  const json& post = field(j, "post_network", ctx);
  net.pre = matrix_from_json(field(pre, "matrix", ctx), "pre_network.matrix");
  net.post = matrix_from_json(field(post, "matrix", ctx), "post_network.matrix");
  check_shape(net.pre, dm, dm, "pre_network.matrix");
  check_shape(net.post, dm, dm, "post_network.matrix");
  net.pre_schedule = schedule_from_json(field(pre, "schedule", ctx));
  net.post_schedule = schedule_from_json(field(post, "schedule", ctx));
  const json& fb = field(j, "feedback", ctx);
  net.feedback = matrix_from_json(field(fb, "R", ctx), "feedback.R");
  check_shape(net.feedback, dn, dn, "feedback.R");
  net.feedback_schedule = schedule_from_json(field(fb, "schedule", ctx));

  net.bank.channels = net.channels;
  for (const json& c : field(j, "cavities", ctx)) {
    Cavity cav;
    cav.role = c.value("role", "");
    cav.detuning = number_field(c, "detuning", "cavity");
    cav.interconnect_kappa = number_field(c, "interconnect_kappa", "cavity");
    for (const json& p : field(c, "ports", "cavity")) {
      CavityPort port;
      port.channel = index_field(p, "channel", "port");
      const double kappa = number_field(p, "kappa", "port"), g = number_field(p, "g", "port");
      if (kappa < 0 || g < 0) bad("port: coupling rates must be non-negative");
      port.passive = std::polar(std::sqrt(kappa), number_field(p, "phi", "port"));
      port.active = std::polar(std::sqrt(g), number_field(p, "theta", "port"));
      cav.ports.push_back(port);
    }
    net.bank.cavities.push_back(cav);
  }
  std::vector<ChannelMixer> mixers;
  if (j.contains("intra_block_devices")) {
    for (const json& d : j["intra_block_devices"]) {
      const json& ch = field(d, "channels", "intra_block_devices");
      if (!ch.is_array() || ch.size() != 2) bad("intra_block_devices: channels must list two channels");
      ChannelMixer mix{ch[0].get<Index>(), ch[1].get<Index>(),
                       matrix_from_json(field(d, "matrix", "intra_block_devices"), "intra_block_devices.matrix")};
      check_shape(mix.unitary, 2, 2, "intra_block_devices.matrix");
      mixers.push_back(mix);
    }
  }
  if (j.contains("bank_order")) {
    for (const json& st : j["bank_order"]) {
      if (st.contains("cavity")) {
        net.bank.stages.emplace_back(index_field(st, "cavity", "bank_order"));
      } else {
        const Index k = index_field(st, "device", "bank_order");
        if (k >= static_cast<Index>(mixers.size())) bad("bank_order: device index out of range");
        net.bank.stages.emplace_back(mixers[k]);
      }
    }
  } else {
    for (Index i = 0; i < static_cast<Index>(net.bank.cavities.size()); ++i) net.bank.stages.emplace_back(i);
  }
  if (j.contains("reduced")) {
    const json& r = j["reduced"];
    if (r.contains("N_hat")) net.n_hat = matrix_from_json(r["N_hat"], "reduced.N_hat");
    if (r.contains("M_hat")) net.m_hat = matrix_from_json(r["M_hat"], "reduced.M_hat");
    if (r.contains("M_conc")) net.m_conc = matrix_from_json(r["M_conc"], "reduced.M_conc");
    if (r.contains("X")) net.x = matrix_from_json(r["X"], "reduced.X");
  }
  if (j.contains("provenance")) {
    const json& p = j["provenance"];
    if (p.contains("eigenvalue_classes"))
      for (const json& c : p["eigenvalue_classes"])
        net.classes.push_back({c.value("kind", ""), complex_from_json(c.at("value"), "class value")});
    if (p.contains("residuals"))
      for (auto it = p["residuals"].begin(); it != p["residuals"].end(); ++it)
        net.residuals[it.key()] = it.value().get<double>();
  }
  return net;
}

json to_json(const VerifyReport& rep) {
  json samples = json::array();
  for (const auto& s : rep.samples) samples.push_back({{"s", to_json(s.s)}, {"error", s.error}});
  return {{"schema_version", kSchemaVersion},
          {"pass", rep.pass},
          {"max_error", rep.max_error},
          {"tol", rep.tol},
          {"samples", samples}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::validation, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::validation, path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::validation, "cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace lqss::io
