#include "fano/service.hpp"

#include <httplib.h>

#include <iostream>
#include <thread>

namespace fano {

void ServiceStore::add(Database db) {
    std::string dataid = "smoothfano" + std::to_string(db.dimension);
    databases[dataid] = std::move(db);
}

namespace {

std::string xml_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

Integer parse_constraint(const std::string& value, const std::string& name) {
    try {
        return Integer(value);
    } catch (const std::invalid_argument&) {
        throw ServiceError(400, "parameter " + name + " must be an integer");
    }
}

}  // namespace

std::string search_xml(const ServiceStore& store,
                       const std::map<std::string, std::string>& params,
                       std::string* agent_log) {
    auto agent = params.find("agent");
    if (agent == params.end())
        throw ServiceError(400, "missing 'agent' parameter; set it to identify your client");
    if (agent_log) *agent_log = agent->second;

    auto dataid = params.find("dataid");
    if (dataid == params.end()) throw ServiceError(400, "missing 'dataid' parameter");
    auto db_it = store.databases.find(dataid->second);
    if (db_it == store.databases.end())
        throw ServiceError(400, "unknown dataid '" + dataid->second + "'");
    const Database& db = db_it->second;

    int printlevel = 1;
    if (auto it = params.find("printlevel"); it != params.end()) {
        try {
            printlevel = std::stoi(it->second);
        } catch (const std::exception&) {
            throw ServiceError(400, "printlevel must be an integer");
        }
        if (printlevel < 1 || printlevel > 3)
            throw ServiceError(400, "printlevel must be between 1 and 3");
    }

    QueryFilter filter;
    if (auto it = params.find("id"); it != params.end()) {
        Integer id = parse_constraint(it->second, "id");
        if (!id.fits_slong_p()) throw ServiceError(400, "id out of range");
        filter.id = id.get_si();
    }
    for (int d = 2; d <= 6; ++d) {
        std::string name = "c" + std::to_string(d);
        if (auto it = params.find(name); it != params.end())
            filter.coefficient[d] = parse_constraint(it->second, name);
    }

    auto matches = query(db, filter);

    std::string body;
    body += "<?xml version=\"1.0\"?>\n";
    body += "<!-- Graded Ring Database -->\n";
    body += "<results numrows=\"" + std::to_string(matches.size()) + "\">\n";
    int row = 0;
    for (const auto& rec : matches) {
        ++row;
        body += "  <result row=\"" + std::to_string(row) + "\" printlevel=\"" +
                std::to_string(printlevel) + "\">\n";
        body += "    <id>" + std::to_string(rec.id) + "</id>\n";
        std::string names;
        for (std::size_t i = 0; i < rec.names.size(); ++i) {
            if (i) names += ", ";
            names += rec.names[i];
        }
        body += "    <names>" + xml_escape(names) + "</names>\n";
        for (int d = 2; d <= 6; ++d) {
            if (rec.period.max_index() < d) continue;
            body += "    <c" + std::to_string(d) + ">" + to_string(rec.period.coeffs[d]) +
                    "</c" + std::to_string(d) + ">\n";
        }
        if (printlevel >= 2) {
            // the full stored truncation is emitted; display truncation is a
            // client concern
            body += "    <period>" + format_period(rec.period, false) + "</period>\n";
            if (rec.notes) body += "    <notes>" + xml_escape(*rec.notes) + "</notes>\n";
        }
        if (printlevel >= 3 && rec.op) {
            body += "    <pf_coefficients>" + format_coefficient_list(*rec.op, false) +
                    "</pf_coefficients>\n";
            body += "    <pf_exponents>" + format_exponent_pairs(*rec.op, false) +
                    "</pf_exponents>\n";
            if (rec.pf_proven)
                body += std::string("    <pf_proven>") + (*rec.pf_proven ? "true" : "false") +
                        "</pf_proven>\n";
        }
        body += "  </result>\n";
    }
    body += "</results>\n";
    return body;
}

class HttpServer : public httplib::Server {};

Service::Service(ServiceStore store, int port) : store_(std::move(store)), port_(port) {}

Service::~Service() { stop(); }

namespace {

void attach_routes(httplib::Server& server, const ServiceStore& store) {
    server.Get("/xml/search.xml", [&store](const httplib::Request& req, httplib::Response& res) {
        std::map<std::string, std::string> params;
        for (const auto& [key, value] : req.params) params.emplace(key, value);
        try {
            std::string agent;
            std::string body = search_xml(store, params, &agent);
            std::cerr << "search agent=" << agent << " params=" << req.params.size() << "\n";
            res.set_content(body, "text/xml");
        } catch (const ServiceError& err) {
            res.status = err.http_status;
            res.set_content(std::string(err.what()) + "\n", "text/plain");
        }
    });
}

}  // namespace

bool Service::run() {
    server_ = std::make_unique<HttpServer>();
    attach_routes(*server_, store_);
    return server_->listen("0.0.0.0", port_);
}

int Service::start_background() {
    server_ = std::make_unique<HttpServer>();
    attach_routes(*server_, store_);
    int port = server_->bind_to_any_port("127.0.0.1");
    std::thread([this] { server_->listen_after_bind(); }).detach();
    server_->wait_until_ready();
    return port;
}

void Service::stop() {
    if (server_) server_->stop();
}

}  // namespace fano
