#include "radoloc/name_model.hpp"

#include <fstream>
#include <stdexcept>

#include "radoloc/rado.hpp"

namespace radoloc::construction {

namespace {

class EncodeModel final : public NameModel {
 public:
  Natural value(std::size_t n, const VertexSet& K) const override {
    std::vector<Natural> positions{Natural(n).doubled()};
    for (const auto& k : K) positions.push_back(k.doubled().successor());
    return Natural::from_positions(std::move(positions));
  }
  std::string selector() const override { return "encode"; }
};

class ConstantModel final : public NameModel {
 public:
  explicit ConstantModel(Natural v) : v_(std::move(v)) {}
  Natural value(std::size_t, const VertexSet&) const override { return v_; }
  std::string selector() const override { return "constant:" + v_.to_string(); }

 private:
  Natural v_;
};

class TableModel final : public NameModel {
 public:
  TableModel(std::map<std::pair<std::size_t, VertexSet>, Natural> table, std::optional<Natural> fallback,
             std::string source)
      : table_(std::move(table)), fallback_(std::move(fallback)), source_(std::move(source)) {}

  Natural value(std::size_t n, const VertexSet& K) const override {
    auto it = table_.find({n, make_set(K)});
    if (it != table_.end()) return it->second;
    if (fallback_) return *fallback_;
    throw std::out_of_range("name table " + source_ + " has no entry for (n=" + std::to_string(n) +
                            ", K=" + set_to_string(make_set(K)) + ")");
  }
  std::string selector() const override { return "file:" + source_; }

 private:
  std::map<std::pair<std::size_t, VertexSet>, Natural> table_;
  std::optional<Natural> fallback_;
  std::string source_;
};

}  // namespace

std::shared_ptr<const NameModel> encode_name_model() { return std::make_shared<EncodeModel>(); }

std::shared_ptr<const NameModel> constant_name_model(Natural value) {
  return std::make_shared<ConstantModel>(std::move(value));
}

std::shared_ptr<const NameModel> table_name_model(const nlohmann::json& j, std::string source) {
  if (j.value("format", "") != "radoloc.names/1") {
    throw std::invalid_argument("name table " + source + " lacks format tag radoloc.names/1");
  }
  std::map<std::pair<std::size_t, VertexSet>, Natural> table;
  for (const auto& e : j.at("entries")) {
    table[{e.at("n").get<std::size_t>(), rado::set_from_json(e.at("K"))}] = rado::natural_from_json(e.at("m"));
  }
  std::optional<Natural> fallback;
  if (j.contains("default")) fallback = rado::natural_from_json(j.at("default"));
  return std::make_shared<TableModel>(std::move(table), std::move(fallback), std::move(source));
}

std::shared_ptr<const NameModel> name_model_from_selector(std::string_view selector) {
  if (selector == "encode") return encode_name_model();
  if (selector.starts_with("constant:")) return constant_name_model(Natural::parse(selector.substr(9)));
  if (selector.starts_with("file:")) {
    const std::string path(selector.substr(5));
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open name table " + path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument("name table " + path + ": " + e.what());
    }
    return table_name_model(j, path);
  }
  throw std::invalid_argument("unknown name model '" + std::string(selector) +
                              "' (expected encode, constant:<v> or file:<path>)");
}

}  // namespace radoloc::construction
