#include "hardedge/ensembles.hpp"

#include <sstream>

#include <json.hpp>

namespace hardedge::ensembles {

const char* family_name(Family f) {
    switch (f) {
        case Family::LaguerreProduct: return "LaguerreProduct";
        case Family::MuttalibBorodinLaguerre: return "MuttalibBorodinLaguerre";
        case Family::LaguerreInverseProduct: return "LaguerreInverseProduct";
        case Family::JacobiUnitary: return "JacobiUnitary";
    }
    throw domain_error("family_name: unknown family");
}

Family family_from_name(const std::string& name) {
    if (name == "LaguerreProduct") return Family::LaguerreProduct;
    if (name == "MuttalibBorodinLaguerre") return Family::MuttalibBorodinLaguerre;
    if (name == "LaguerreInverseProduct") return Family::LaguerreInverseProduct;
    if (name == "JacobiUnitary") return Family::JacobiUnitary;
    throw config_error("unknown ensemble family: " + name);
}

void EnsembleSpec::validate() const {
    if (matrix_dim < 1) throw config_error("ensemble: N must be a positive integer");
    if (m_count < 1) throw config_error("ensemble: M must be a positive integer");
    if (static_cast<int>(a_params.size()) != m_count)
        throw config_error("ensemble: a parameter list must have length M");
    for (double a : a_params)
        if (!(a > -1.0)) throw config_error("ensemble: need a_j > -1");
    switch (family) {
        case Family::LaguerreProduct:
            break;
        case Family::MuttalibBorodinLaguerre:
            if (m_count != 1) throw config_error("ensemble: MB family has M = 1");
            if (!(theta > 0.0)) throw config_error("ensemble: need theta > 0");
            break;
        case Family::LaguerreInverseProduct:
        case Family::JacobiUnitary:
            if (family == Family::JacobiUnitary && m_count != 1)
                throw config_error("ensemble: Jacobi family has M = 1");
            if (static_cast<int>(b_params.size()) != m_count)
                throw config_error("ensemble: b parameter list must have length M");
            for (double b : b_params)
                if (!(b >= 0.0)) throw config_error("ensemble: need b_l >= 0");
            break;
    }
}

EnsembleSpec ensemble_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("ensemble JSON parse failure: ") + e.what());
    }
    EnsembleSpec spec;
    try {
        spec.family = family_from_name(j.at("family").get<std::string>());
        spec.m_count = j.value("M", 1);
        spec.a_params = j.value("a", std::vector<double>{});
        spec.b_params = j.value("b", std::vector<double>{});
        spec.theta = j.value("theta", 1.0);
        spec.matrix_dim = j.at("N").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("ensemble JSON field failure: ") + e.what());
    }
    spec.validate();
    return spec;
}

std::string ensemble_to_json(const EnsembleSpec& spec) {
    nlohmann::json j;
    j["family"] = family_name(spec.family);
    j["M"] = spec.m_count;
    j["a"] = spec.a_params;
    j["b"] = spec.b_params;
    j["theta"] = spec.theta;
    j["N"] = spec.matrix_dim;
    return j.dump();
}

}  // namespace hardedge::ensembles
