#include "ordrep/svm/persist.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>

#include "ordrep/core/csv.hpp"
#include "ordrep/core/text_record.hpp"

namespace ordrep {
namespace {

void write_header(std::ostream& out, const char* model, int classes, std::size_t dim, const Kernel& base,
                  double C) {
  out << kSvmFormatHeader << '\n';
  out << "model " << model << '\n';
  out << "classes " << classes << '\n';
  out << "dim " << dim << '\n';
  out << "kernel " << kernel_kind_name(base.kind) << ' ' << base.degree << '\n';
  out << "C " << format_double(C, 17) << '\n';
}

void write_no_replication(std::ostream& out) { out << "h -\ns -\nj -\ncumulative -\n"; }

struct Header {
  std::string model;
  int classes = 0;
  std::size_t dim = 0;
  Kernel base;
  double C = 0.0;
  std::vector<std::string> h, s, j, cumulative;
};

Header read_header(RecordReader& in) {
  const auto magic = in.next();
  if (magic.size() != 2 || magic[0] + " " + magic[1] != kSvmFormatHeader) {
    throw std::runtime_error("not an ordrep SVM model file (missing '" + std::string(kSvmFormatHeader) + "')");
  }
  Header h;
  h.model = in.expect("model", 1)[0];
  h.classes = static_cast<int>(in.expect_int("classes"));
  h.dim = static_cast<std::size_t>(in.expect_int("dim"));
  const auto kernel = in.expect("kernel", 2);
  h.base.kind = parse_kernel_kind(kernel[0]);
  h.base.degree = static_cast<int>(parse_int(kernel[1]));
  h.C = in.expect_double("C");
  h.h = in.expect("h", 1);
  h.s = in.expect("s", 1);
  h.j = in.expect("j", 1);
  h.cumulative = in.expect("cumulative", 1);
  return h;
}

std::size_t expect_machines(RecordReader& in, std::size_t want) {
  const auto n = static_cast<std::size_t>(in.expect_int("machines"));
  if (n != want) throw std::runtime_error("model file declares " + std::to_string(n) + " machines, expected " +
                                          std::to_string(want));
  return n;
}

}  // namespace

void save_svm_model(std::ostream& out, const SvmModel& model) {
  if (const auto* m = std::get_if<OrdinalSVMModel>(&model)) {
    const auto& cfg = m->config();
    Kernel base = m->machine().kernel();
    base.linear_tail = 0;
    write_header(out, "osvm", cfg.num_classes, cfg.dim, base, m->machine().C());
    out << "h " << format_double(cfg.h, 17) << '\n';
    out << "s " << cfg.s << '\n';
    out << "j " << cfg.j << '\n';
    out << "cumulative " << (cfg.cumulative_e ? 1 : 0) << '\n';
    out << "machines 1\nmachine 0\n";
    m->machine().save_block(out);
  } else if (const auto* m = std::get_if<OneVsOneSVM>(&model)) {
    const auto machines = m->machines();
    write_header(out, "csvm", m->num_classes(), m->dim(), machines.front().kernel(), machines.front().C());
    write_no_replication(out);
    out << "machines " << machines.size() << '\n';
    for (std::size_t i = 0; i < machines.size(); ++i) {
      out << "machine " << m->pairs()[i].first << ' ' << m->pairs()[i].second << '\n';
      machines[i].save_block(out);
    }
  } else if (const auto* m = std::get_if<FrankHallSVM>(&model)) {
    const auto machines = m->machines();
    write_header(out, "psvm", m->num_classes(), m->dim(), machines.front().kernel(), machines.front().C());
    write_no_replication(out);
    out << "machines " << machines.size() << '\n';
    for (std::size_t i = 0; i < machines.size(); ++i) {
      out << "machine " << (i + 1) << '\n';
      machines[i].save_block(out);
    }
  }
}

SvmModel load_svm_model(std::istream& stream) {
  RecordReader in(stream);
  const Header h = read_header(in);
  if (h.model == "osvm") {
    ReplicationConfig cfg;
    cfg.num_classes = h.classes;
    cfg.dim = h.dim;
    cfg.h = parse_double(h.h[0]);
    cfg.s = static_cast<int>(parse_int(h.s[0]));
    cfg.j = static_cast<std::size_t>(parse_int(h.j[0]));
    cfg.cumulative_e = parse_int(h.cumulative[0]) != 0;
    cfg.validate();
    expect_machines(in, 1);
    in.expect("machine");
    auto machine = BinarySVMModel::load_block(in, h.base.extended(cfg.e_block_dim()), h.C);
    return OrdinalSVMModel(std::move(machine), cfg);
  }
  if (h.model == "csvm") {
    const auto n = expect_machines(in, static_cast<std::size_t>(h.classes * (h.classes - 1) / 2));
    std::vector<std::pair<int, int>> pairs;
    std::vector<BinarySVMModel> machines;
    for (std::size_t i = 0; i < n; ++i) {
      const auto tag = in.expect("machine", 2);
      pairs.emplace_back(static_cast<int>(parse_int(tag[0])), static_cast<int>(parse_int(tag[1])));
      machines.push_back(BinarySVMModel::load_block(in, h.base, h.C));
    }
    return OneVsOneSVM(h.classes, h.dim, std::move(pairs), std::move(machines));
  }
  if (h.model == "psvm") {
    const auto n = expect_machines(in, static_cast<std::size_t>(h.classes - 1));
    std::vector<BinarySVMModel> machines;
    for (std::size_t i = 0; i < n; ++i) {
      in.expect("machine", 1);
      machines.push_back(BinarySVMModel::load_block(in, h.base, h.C));
    }
    return FrankHallSVM(h.classes, h.dim, std::move(machines));
  }
  throw std::runtime_error("unknown SVM model kind '" + h.model + "'");
}

}  // namespace ordrep
