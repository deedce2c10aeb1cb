#include <doctest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <thread>

#include <httplib.h>

#include "fxnet/error.hpp"
#include "fxnet/fetch.hpp"

using namespace fxnet;
namespace fs = std::filesystem;

namespace {

struct LocalServer {
    httplib::Server server;
    std::thread thread;
    int port = 0;
    std::atomic<int> hits{0};

    LocalServer() {
        server.Get(R"(/data/(\w+)\.csv)", [this](const httplib::Request& req,
                                                 httplib::Response& res) {
            ++hits;
            std::string code = req.matches[1];
            if (code == "BAD") {
                res.status = 404;
                return;
            }
            if (code == "NIL") {
                res.set_content("", "text/csv");
                return;
            }
            res.set_content("date," + code + "\n2020-01-02,1.5\n", "text/csv");
        });
        port = server.bind_to_any_port("127.0.0.1");
        thread = std::thread([this] { server.listen_after_bind(); });
        server.wait_until_ready();
    }

    ~LocalServer() {
        server.stop();
        thread.join();
    }

    std::string url_template() const {
        return "http://127.0.0.1:" + std::to_string(port) + "/data/{code}.csv";
    }
};

fs::path fresh_dir(const char* name) {
    fs::path dir = fs::temp_directory_path() / "fxnet_fetch_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("two currencies, empty cache: two files written") {
    LocalServer server;
    auto cache = fresh_dir("two");
    std::vector<CurrencyCode> codes{CurrencyCode("AUD"), CurrencyCode("EUR")};
    FetchOptions opt;
    opt.cache_dir = cache;

    auto result = fetch_panel(server.url_template(), codes, opt);
    CHECK(result.all_ok());
    REQUIRE(result.items.size() == 2);
    for (const auto& item : result.items) {
        CHECK(item.ok);
        CHECK_FALSE(item.from_cache);
        CHECK(fs::file_size(item.path) > 0);
    }
    CHECK(fs::exists(cache / "AUD.csv"));
    CHECK(fs::exists(cache / "EUR.csv"));
    CHECK(server.hits == 2);
}

TEST_CASE("repeated call: zero downloads, two cache hits") {
    LocalServer server;
    auto cache = fresh_dir("idempotent");
    std::vector<CurrencyCode> codes{CurrencyCode("AUD"), CurrencyCode("EUR")};
    FetchOptions opt;
    opt.cache_dir = cache;

    fetch_panel(server.url_template(), codes, opt);
    int after_first = server.hits;
    auto again = fetch_panel(server.url_template(), codes, opt);
    CHECK(server.hits == after_first);  // no new requests
    for (const auto& item : again.items) {
        CHECK(item.ok);
        CHECK(item.from_cache);
    }
}

TEST_CASE("persistent 404 is reported per currency after the retry budget") {
    LocalServer server;
    auto cache = fresh_dir("missing");
    std::vector<CurrencyCode> codes{CurrencyCode("AUD"), CurrencyCode("BAD")};
    FetchOptions opt;
    opt.cache_dir = cache;
    opt.max_retries = 3;

    auto result = fetch_panel(server.url_template(), codes, opt);
    CHECK_FALSE(result.all_ok());
    REQUIRE(result.failed_currencies().size() == 1);
    CHECK(result.failed_currencies()[0] == CurrencyCode("BAD"));
    for (const auto& item : result.items) {
        if (item.code == CurrencyCode("BAD")) {
            CHECK_FALSE(item.ok);
            CHECK(item.error.find("BAD") != std::string::npos);
            CHECK(item.error.find("404") != std::string::npos);
        } else {
            CHECK(item.ok);
        }
    }
    CHECK_FALSE(fs::exists(cache / "BAD.csv"));
    CHECK(server.hits == 1 + 3);  // one success, three attempts for the 404
}

TEST_CASE("empty bodies are failures") {
    LocalServer server;
    auto cache = fresh_dir("empty");
    std::vector<CurrencyCode> codes{CurrencyCode("NIL")};
    FetchOptions opt;
    opt.cache_dir = cache;
    opt.max_retries = 2;

    auto result = fetch_panel(server.url_template(), codes, opt);
    CHECK_FALSE(result.all_ok());
    CHECK(result.items[0].error.find("empty") != std::string::npos);
}

TEST_CASE("template must contain the code placeholder") {
    std::vector<CurrencyCode> codes{CurrencyCode("AUD")};
    FetchOptions opt;
    opt.cache_dir = fresh_dir("tmpl");
    CHECK_THROWS_AS(fetch_panel("http://127.0.0.1:1/static.csv", codes, opt), ValidationError);
}

TEST_CASE("start and end placeholders are substituted") {
    LocalServer server;
    std::atomic<bool> saw_range{false};
    server.server.Get("/range", [&](const httplib::Request& req, httplib::Response& res) {
        if (req.has_param("from") && req.get_param_value("from") == "1999-01-04" &&
            req.get_param_value("to") == "2001-12-31")
            saw_range = true;
        res.set_content("x", "text/csv");
    });

    auto cache = fresh_dir("range");
    std::vector<CurrencyCode> codes{CurrencyCode("AUD")};
    FetchOptions opt;
    opt.cache_dir = cache;
    opt.start_date = "1999-01-04";
    opt.end_date = "2001-12-31";
    std::string tmpl = "http://127.0.0.1:" + std::to_string(server.port) +
                       "/range?code={code}&from={start}&to={end}";
    auto result = fetch_panel(tmpl, codes, opt);
    CHECK(result.all_ok());
    CHECK(saw_range);
}
