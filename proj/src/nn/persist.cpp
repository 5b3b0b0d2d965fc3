#include "ordrep/nn/persist.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>

#include "ordrep/core/csv.hpp"
#include "ordrep/core/text_record.hpp"

namespace ordrep {
namespace {

void write_network(std::ostream& out, std::size_t index, const MLPModel& net) {
  const auto& a = net.architecture();
  out << "network " << index << '\n';
  out << "inputs " << a.input_dim << " passthrough " << a.passthrough << '\n';
  out << "hidden " << a.hidden.size();
  for (auto h : a.hidden) out << ' ' << h;
  out << '\n';
  out << "outputs " << a.output_dim << ' ' << activation_name(a.output) << '\n';
  for (std::size_t l = 0; l < a.num_layers(); ++l) {
    const std::size_t rows = a.layer_outputs(l), cols = a.layer_inputs(l);
    out << "layer " << l << ' ' << rows << ' ' << cols << '\n';
    const auto w = net.weights(l);
    for (std::size_t r = 0; r < rows; ++r) {
      out << 'w';
      for (std::size_t c = 0; c < cols; ++c) out << ' ' << format_double(w[r * cols + c], 17);
      out << '\n';
    }
    out << 'b';
    for (double b : net.biases(l)) out << ' ' << format_double(b, 17);
    out << '\n';
  }
}

std::size_t to_size(const std::string& s) {
  const long long v = parse_int(s);
  if (v < 0) throw std::runtime_error("negative size '" + s + "' in model file");
  return static_cast<std::size_t>(v);
}

MLPModel read_network(RecordReader& in, std::size_t index) {
  const auto tag = in.expect("network", 1);
  if (to_size(tag[0]) != index) throw std::runtime_error("networks out of order in model file");
  MLPArchitecture a;
  const auto inputs = in.expect("inputs", 3);
  a.input_dim = to_size(inputs[0]);
  if (inputs[1] != "passthrough") throw std::runtime_error("expected 'passthrough' at line " + std::to_string(in.line()));
  a.passthrough = to_size(inputs[2]);
  const auto hidden = in.expect("hidden", 1);
  const std::size_t layers = to_size(hidden[0]);
  if (hidden.size() != layers + 1) throw std::runtime_error("hidden layer list has the wrong length");
  for (std::size_t i = 0; i < layers; ++i) a.hidden.push_back(to_size(hidden[i + 1]));
  const auto outputs = in.expect("outputs", 2);
  a.output_dim = to_size(outputs[0]);
  a.output = parse_activation(outputs[1]);
  MLPModel net(a);
  for (std::size_t l = 0; l < a.num_layers(); ++l) {
    const auto head = in.expect("layer", 3);
    const std::size_t rows = to_size(head[1]), cols = to_size(head[2]);
    if (to_size(head[0]) != l || rows != a.layer_outputs(l) || cols != a.layer_inputs(l)) {
      throw std::runtime_error("layer shape does not match architecture at line " + std::to_string(in.line()));
    }
    auto w = net.weights(l);
    for (std::size_t r = 0; r < rows; ++r) {
      const auto row = in.expect("w", cols);
      if (row.size() != cols) throw std::runtime_error("weight row has the wrong length");
      for (std::size_t c = 0; c < cols; ++c) w[r * cols + c] = parse_double(row[c]);
    }
    const auto b = in.expect("b", rows);
    if (b.size() != rows) throw std::runtime_error("bias row has the wrong length");
    auto biases = net.biases(l);
    for (std::size_t r = 0; r < rows; ++r) biases[r] = parse_double(b[r]);
  }
  return net;
}

void write_header(std::ostream& out, const char* model, int classes, std::size_t dim) {
  out << kNNFormatHeader << '\n' << "model " << model << '\n' << "classes " << classes << '\n' << "dim " << dim << '\n';
}

}  // namespace

void save_nn_model(std::ostream& out, const NNModel& model) {
  const char* none = "h -\ns -\nj -\ncumulative -\n";
  if (const auto* m = std::get_if<ClassifierNN>(&model)) {
    write_header(out, "cnn", m->num_classes(), m->network().architecture().input_dim);
    out << none << "networks 1\n";
    write_network(out, 0, m->network());
  } else if (const auto* m = std::get_if<FrankHallNN>(&model)) {
    write_header(out, "pnn", m->num_classes(), m->networks().front().architecture().input_dim);
    out << none << "networks " << m->networks().size() << '\n';
    for (std::size_t i = 0; i < m->networks().size(); ++i) write_network(out, i, m->networks()[i]);
  } else if (const auto* m = std::get_if<OrdinalNN>(&model)) {
    const auto& cfg = m->config();
    write_header(out, "onn", cfg.num_classes, cfg.dim);
    out << "h " << format_double(cfg.h, 17) << "\ns " << cfg.s << "\nj " << cfg.j << "\ncumulative "
        << (cfg.cumulative_e ? 1 : 0) << "\nnetworks 1\n";
    write_network(out, 0, m->network());
  } else if (const auto* m = std::get_if<UnimodalNN>(&model)) {
    write_header(out, "unn", m->num_classes(), m->network().architecture().input_dim);
    out << none << "networks 1\n";
    write_network(out, 0, m->network());
  }
}

NNModel load_nn_model(std::istream& stream) {
  RecordReader in(stream);
  const auto magic = in.next();
  if (magic.size() != 2 || magic[0] + " " + magic[1] != kNNFormatHeader) {
    throw std::runtime_error("not an ordrep network file (missing '" + std::string(kNNFormatHeader) + "')");
  }
  const std::string model = in.expect("model", 1)[0];
  const int classes = static_cast<int>(in.expect_int("classes"));
  const auto dim = static_cast<std::size_t>(in.expect_int("dim"));
  const auto h = in.expect("h", 1);
  const auto s = in.expect("s", 1);
  const auto j = in.expect("j", 1);
  const auto cumulative = in.expect("cumulative", 1);
  const auto count = static_cast<std::size_t>(in.expect_int("networks"));
  auto expect_count = [&](std::size_t want) {
    if (count != want) throw std::runtime_error("model file declares " + std::to_string(count) +
                                                " networks, expected " + std::to_string(want));
  };
  auto check_dim = [&](const MLPModel& net) {
    if (net.architecture().input_dim != dim) throw std::runtime_error("network input width does not match dim");
  };
  if (model == "cnn") {
    expect_count(1);
    auto net = read_network(in, 0);
    check_dim(net);
    return ClassifierNN(std::move(net), classes);
  }
  if (model == "pnn") {
    expect_count(static_cast<std::size_t>(classes - 1));
    std::vector<MLPModel> nets;
    for (std::size_t i = 0; i < count; ++i) {
      nets.push_back(read_network(in, i));
      check_dim(nets.back());
    }
    return FrankHallNN(classes, std::move(nets));
  }
  if (model == "onn") {
    ReplicationConfig cfg;
    cfg.num_classes = classes;
    cfg.dim = dim;
    cfg.h = parse_double(h[0]);
    cfg.s = static_cast<int>(parse_int(s[0]));
    cfg.j = to_size(j[0]);
    cfg.cumulative_e = parse_int(cumulative[0]) != 0;
    expect_count(1);
    return OrdinalNN(read_network(in, 0), cfg);
  }
  if (model == "unn") {
    expect_count(1);
    auto net = read_network(in, 0);
    check_dim(net);
    return UnimodalNN(std::move(net), classes);
  }
  throw std::runtime_error("unknown network model kind '" + model + "'");
}

}  // namespace ordrep
