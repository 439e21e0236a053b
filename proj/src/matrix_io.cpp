#include "ophh/matrix_io.hpp"

#include <fstream>

#include "ophh/errors.hpp"

namespace ophh {

nlohmann::ordered_json matrix_to_json(const HermitianMatrix& m) {
    const int n = m.dim();
    nlohmann::ordered_json re = nlohmann::ordered_json::array();
    nlohmann::ordered_json im = nlohmann::ordered_json::array();
    for (int i = 0; i < n; ++i) {
        nlohmann::ordered_json rrow = nlohmann::ordered_json::array();
        nlohmann::ordered_json irow = nlohmann::ordered_json::array();
        for (int j = 0; j < n; ++j) {
            rrow.push_back(m(i, j).real());
            irow.push_back(m(i, j).imag());
        }
        re.push_back(std::move(rrow));
        im.push_back(std::move(irow));
    }
    return nlohmann::ordered_json{{"n", n}, {"re", std::move(re)}, {"im", std::move(im)}};
}

HermitianMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("re") || !j.contains("im"))
        throw ConfigError("matrix json needs fields n, re, im");
    const int n = j.at("n").get<int>();
    if (n <= 0) throw ConfigError("matrix dimension must be positive");
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (!re.is_array() || !im.is_array() || re.size() != static_cast<size_t>(n) ||
        im.size() != static_cast<size_t>(n))
        throw ConfigError("matrix json re/im must be n rows");
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        const auto& rrow = re.at(static_cast<size_t>(i));
        const auto& irow = im.at(static_cast<size_t>(i));
        if (rrow.size() != static_cast<size_t>(n) || irow.size() != static_cast<size_t>(n))
            throw ConfigError("matrix json rows must have n entries");
        for (int k = 0; k < n; ++k)
            m(i, k) = cdouble{rrow.at(static_cast<size_t>(k)).get<double>(),
                              irow.at(static_cast<size_t>(k)).get<double>()};
    }
    try {
        return HermitianMatrix::from(m);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("matrix json rejected: ") + e.what());
    }
}

void save_matrix(const HermitianMatrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out << matrix_to_json(m).dump(2) << "\n";
}

HermitianMatrix load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("bad matrix json in ") + path + ": " + e.what());
    }
    return matrix_from_json(j);
}

}  // namespace ophh
