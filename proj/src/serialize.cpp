#include "solkms/serialize.hpp"

#include <ostream>

namespace solkms {

nlohmann::json measure_to_json(const CircleMeasure& m) {
    nlohmann::json pieces = nlohmann::json::array();
    for (const auto& p : m.pieces()) {
        pieces.push_back(nlohmann::json{
            {"start", p.lo}, {"end", p.hi}, {"coeff", p.coeff}, {"rate", p.rate}});
    }
    return nlohmann::json{{"pieces", pieces}};
}

CircleMeasure measure_from_json(const nlohmann::json& j) {
    std::vector<ExpPiece> pieces;
    for (const auto& p : j.at("pieces")) {
        pieces.push_back(ExpPiece{p.at("start").get<double>(), p.at("end").get<double>(),
                                  p.at("coeff").get<double>(), p.at("rate").get<double>()});
    }
    return CircleMeasure(std::move(pieces));
}

nlohmann::json state_to_json(const KmsState& phi) {
    nlohmann::json levels = nlohmann::json::array();
    for (const auto& m : phi.tower.levels) levels.push_back(measure_to_json(m));
    return nlohmann::json{{"N", phi.theta.N()},
                          {"theta0", phi.theta.theta(0)},
                          {"depth", phi.theta.depth()},
                          {"beta", phi.theta.beta()},
                          {"levels", levels}};
}

KmsState state_from_json(const nlohmann::json& j) {
    ThetaSeq theta = make_theta_seq(j.at("N").get<int>(), j.at("theta0").get<double>(),
                                    j.at("depth").get<int>(), j.at("beta").get<double>());
    MeasureTower tower;
    for (const auto& level : j.at("levels")) tower.levels.push_back(measure_from_json(level));
    if (static_cast<int>(tower.levels.size()) != theta.depth() + 1) {
        throw std::invalid_argument("state record needs depth+1 measure levels");
    }
    return KmsState{std::move(theta), std::move(tower)};
}

void write_density_csv(std::ostream& out, const CircleMeasure& m, int samples) {
    out << "t,density\n";
    char buf[64];
    for (int i = 0; i < samples; ++i) {
        const double t = static_cast<double>(i) / samples;
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", t, m.density(CirclePoint(t)));
        out << buf;
    }
}

}  // namespace solkms
