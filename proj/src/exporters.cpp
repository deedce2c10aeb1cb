#include "fxnet/exporters.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace fxnet {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string format_fixed(double v, int digits) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

} // namespace

std::string to_dot(const SpanningTree& tree) {
    std::ostringstream os;
    os << "graph \"" << tree.base.str() << "-based\" {\n";
    os << "  node [shape=ellipse, fontsize=10];\n";
    for (const auto& node : tree.nodes) os << "  \"" << node.str() << "\";\n";
    for (const auto& e : tree.edges) {
        os << "  \"" << tree.nodes[e.a].str() << "\" -- \"" << tree.nodes[e.b].str() << "\""
           << " [weight=" << format_fixed(e.weight, 6)
           << ", penwidth=" << format_fixed(5.0 * e.weight, 3);
        if (e.anticorrelated) os << ", color=green";
        os << "];\n";
    }
    os << "}\n";
    return os.str();
}

std::string to_graphml(const SpanningTree& tree) {
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
       << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n"
       << "  <key id=\"distance\" for=\"edge\" attr.name=\"distance\" attr.type=\"double\"/>\n"
       << "  <key id=\"anticorrelated\" for=\"edge\" attr.name=\"anticorrelated\""
       << " attr.type=\"boolean\"/>\n"
       << "  <graph id=\"" << tree.base.str() << "-based\" edgedefault=\"undirected\">\n";
    for (const auto& node : tree.nodes)
        os << "    <node id=\"" << node.str() << "\"/>\n";
    std::size_t eid = 0;
    for (const auto& e : tree.edges) {
        os << "    <edge id=\"e" << eid++ << "\" source=\"" << tree.nodes[e.a].str()
           << "\" target=\"" << tree.nodes[e.b].str() << "\">\n"
           << "      <data key=\"weight\">" << format_double(e.weight) << "</data>\n"
           << "      <data key=\"distance\">" << format_double(e.distance) << "</data>\n"
           << "      <data key=\"anticorrelated\">" << (e.anticorrelated ? "true" : "false")
           << "</data>\n"
           << "    </edge>\n";
    }
    os << "  </graph>\n</graphml>\n";
    return os.str();
}

std::string edges_csv(const SpanningTree& tree) {
    std::string out = "nodeA,nodeB,distance,weight,anticorrelated\n";
    for (const auto& e : tree.edges) {
        auto [lo, hi] = std::minmax(tree.nodes[e.a], tree.nodes[e.b]);
        out += lo.str() + "," + hi.str() + "," + format_double(e.distance) + "," +
               format_double(e.weight) + "," + (e.anticorrelated ? "true" : "false") + "\n";
    }
    return out;
}

std::string matrix_csv(const Matrix& m, std::span<const CurrencyCode> nodes) {
    std::string out = "code";
    for (const auto& node : nodes) out += "," + node.str();
    out += '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out += nodes[i].str();
        for (std::size_t j = 0; j < m.cols(); ++j) out += "," + format_double(m(i, j));
        out += '\n';
    }
    return out;
}

namespace {

nlohmann::ordered_json report_json(const MetricsReport& r) {
    nlohmann::ordered_json j;
    j["base"] = r.base.str();
    j["window_id"] = r.window_id;
    j["window_end_date"] = r.window_end_date;
    j["path_length"] = r.path_length;
    j["clustering"] = r.clustering;
    j["internode_distance"] = r.internode_distance;
    j["lambda_max"] = r.lambda_max;
    nlohmann::ordered_json nodes;
    for (const auto& [code, nm] : r.per_node) {
        nodes[code.str()] = {{"degree", nm.degree}, {"betweenness", nm.betweenness}};
    }
    j["nodes"] = std::move(nodes);
    return j;
}

} // namespace

std::string metrics_json(const MetricsReport& report) {
    return report_json(report).dump(2) + "\n";
}

std::string metrics_json(std::span<const MetricsReport> reports) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) arr.push_back(report_json(r));
    return arr.dump(2) + "\n";
}

std::string metrics_csv_header() {
    return "base,window_id,window_end_date,path_length,clustering,internode_distance,"
           "lambda_max\n";
}

std::string metrics_csv_row(const MetricsReport& r) {
    return r.base.str() + "," + r.window_id + "," + r.window_end_date + "," +
           format_double(r.path_length) + "," + format_double(r.clustering) + "," +
           format_double(r.internode_distance) + "," + format_double(r.lambda_max) + "\n";
}

std::string survival_csv(const SurvivalSeries& series, bool percent) {
    std::string out = "delta,sigma,Sigma\n";
    const double scale = percent ? 100.0 : 1.0;
    for (std::size_t i = 0; i < series.delta_values.size(); ++i) {
        out += std::to_string(series.delta_values[i]) + "," +
               format_double(series.sigma[i] * scale) + "," +
               format_double(series.Sigma[i] * scale) + "\n";
    }
    return out;
}

std::string metric_series_csv(std::span<const MetricsReport> reports,
                              double MetricsReport::* field) {
    std::string out = "window_end_date,value\n";
    for (const auto& r : reports)
        out += r.window_end_date + "," + format_double(r.*field) + "\n";
    return out;
}

} // namespace fxnet
