#include "resgame/scenario.hpp"

#include <bit>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <utility>

#include "resgame/errors.hpp"

namespace resgame {

namespace {

// Shortest decimal form that parses back to the same double.
std::string exact(double value) {
    char buffer[32];
    auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, end);
}

struct Token {
    enum class Kind { Word, OpenBrace, CloseBrace, Comma, Equals };
    Kind kind;
    std::string text;
};

std::vector<Token> lex_line(std::string_view line) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        const char ch = line[i];
        if (ch == ' ' || ch == '\t' || ch == '\r') {
            ++i;
            continue;
        }
        if (ch == '#') break;
        switch (ch) {
            case '{':
                tokens.push_back({Token::Kind::OpenBrace, "{"});
                ++i;
                continue;
            case '}':
                tokens.push_back({Token::Kind::CloseBrace, "}"});
                ++i;
                continue;
            case ',':
                tokens.push_back({Token::Kind::Comma, ","});
                ++i;
                continue;
            case '=':
                tokens.push_back({Token::Kind::Equals, "="});
                ++i;
                continue;
            default:
                break;
        }
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' &&
               line[i] != '#' && line[i] != '{' && line[i] != '}' && line[i] != ',' &&
               line[i] != '=') {
            ++i;
        }
        tokens.push_back({Token::Kind::Word, std::string(line.substr(start, i - start))});
    }
    return tokens;
}

class Parser {
public:
    Parser(std::string_view text, std::string_view origin) : origin_(origin) {
        std::size_t pos = 0;
        while (pos <= text.size()) {
            const std::size_t nl = text.find('\n', pos);
            const std::size_t end = (nl == std::string_view::npos) ? text.size() : nl;
            lines_.emplace_back(text.substr(pos, end - pos));
            if (nl == std::string_view::npos) break;
            pos = nl + 1;
        }
    }

    Scenario run() {
        for (line_no_ = 1; line_no_ <= static_cast<int>(lines_.size()); ++line_no_) {
            const std::vector<Token> tokens = lex_line(lines_[line_no_ - 1]);
            if (tokens.empty()) continue;
            top_level(tokens);
        }

        Scenario scenario;
        scenario.name = std::move(name_);
        scenario.game = std::move(game_);
        scenario.worth_table = std::move(worth_table_);
        scenario.offers = std::move(offers_);
        scenario.provider_estimates = std::move(provider_estimates_);
        try {
            scenario.validate();
        } catch (const ValidationError& err) {
            throw ValidationError(std::string(origin_) + ": " + err.what());
        }
        return scenario;
    }

private:
    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(std::string(origin_) + ":" + std::to_string(line_no_) + ": " + message,
                         line_no_);
    }

    [[noreturn]] void reject(const std::string& message) const {
        throw ValidationError(std::string(origin_) + ":" + std::to_string(line_no_) + ": " +
                              message);
    }

    double parse_number(const Token& token) const {
        if (token.kind != Token::Kind::Word) fail("expected a number, got '" + token.text + "'");
        double value = 0.0;
        const char* first = token.text.data();
        const char* last = first + token.text.size();
        auto [end, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || end != last) fail("malformed number '" + token.text + "'");
        return value;
    }

    int parse_int(const Token& token) const {
        if (token.kind != Token::Kind::Word) fail("expected an integer, got '" + token.text + "'");
        int value = 0;
        const char* first = token.text.data();
        const char* last = first + token.text.size();
        auto [end, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || end != last) fail("malformed integer '" + token.text + "'");
        return value;
    }

    // `set { 0 , 1 }` starting at tokens[from]; returns the coalition and the
    // index one past the closing brace.
    std::pair<Coalition::mask_type, std::size_t> parse_set(const std::vector<Token>& tokens,
                                                           std::size_t from) const {
        if (from >= tokens.size() || tokens[from].kind != Token::Kind::OpenBrace) {
            fail("expected '{' after 'set'");
        }
        std::vector<int> indices;
        std::size_t i = from + 1;
        bool want_index = true;
        while (i < tokens.size() && tokens[i].kind != Token::Kind::CloseBrace) {
            if (want_index) {
                indices.push_back(parse_int(tokens[i]));
            } else if (tokens[i].kind != Token::Kind::Comma) {
                fail("expected ',' or '}' in service set");
            }
            want_index = !want_index;
            ++i;
        }
        if (i >= tokens.size()) fail("unterminated service set");
        if (indices.empty()) reject("a service set must not be empty");
        Coalition::mask_type mask = 0;
        int previous = -1;
        for (int index : indices) {
            if (index < 0 || index > kMaxServices - 1) {
                reject("service index " + std::to_string(index) + " outside 0.." +
                       std::to_string(kMaxServices - 1));
            }
            if (index <= previous) {
                reject("service indices must be strictly ascending");
            }
            previous = index;
            mask |= Coalition::mask_type{1} << index;
        }
        return {mask, i + 1};
    }

    void top_level(const std::vector<Token>& tokens) {
        const Token& head = tokens.front();
        if (head.kind != Token::Kind::Word) fail("expected a directive, got '" + head.text + "'");

        if (head.text == "name") {
            if (tokens.size() != 2 || tokens[1].kind != Token::Kind::Word) {
                fail("usage: name <identifier>");
            }
            if (!name_.empty()) reject("scenario name given twice");
            name_ = tokens[1].text;
            return;
        }
        if (head.text == "game") {
            expect_block_opener(tokens);
            if (game_) reject("game block given twice");
            parse_game_block();
            return;
        }
        if (head.text == "worths") {
            expect_block_opener(tokens);
            if (worth_table_) reject("worths block given twice");
            worth_table_ = parse_worths_block("worths");
            return;
        }
        if (head.text == "provider_worths") {
            expect_block_opener(tokens);
            if (provider_estimates_) reject("provider_worths block given twice");
            provider_estimates_ = parse_worths_block("provider_worths");
            return;
        }
        if (head.text == "offer") {
            expect_block_opener(tokens);
            parse_offer_block();
            return;
        }
        fail("unknown directive '" + head.text + "'");
    }

    void expect_block_opener(const std::vector<Token>& tokens) const {
        if (tokens.size() != 2 || tokens[1].kind != Token::Kind::OpenBrace) {
            fail("expected '" + tokens.front().text + " {'");
        }
    }

    // Fetches the next non-empty line's tokens, or fails at end of input.
    std::vector<Token> next_block_line(const char* block) {
        while (line_no_ < static_cast<int>(lines_.size())) {
            ++line_no_;
            std::vector<Token> tokens = lex_line(lines_[line_no_ - 1]);
            if (!tokens.empty()) return tokens;
        }
        ++line_no_;
        fail(std::string("unterminated ") + block + " block");
    }

    static bool is_closer(const std::vector<Token>& tokens) {
        return tokens.size() == 1 && tokens[0].kind == Token::Kind::CloseBrace;
    }

    void parse_game_block() {
        std::optional<int> n;
        std::optional<double> a, c, gamma;
        for (;;) {
            const std::vector<Token> tokens = next_block_line("game");
            if (is_closer(tokens)) break;
            const Token& key = tokens.front();
            if (key.kind != Token::Kind::Word || tokens.size() != 2) {
                fail("expected '<parameter> <value>' inside the game block");
            }
            if (key.text == "n") {
                if (n) reject("game parameter n given twice");
                n = parse_int(tokens[1]);
            } else if (key.text == "a") {
                if (a) reject("game parameter a given twice");
                a = parse_number(tokens[1]);
            } else if (key.text == "c") {
                if (c) reject("game parameter c given twice");
                c = parse_number(tokens[1]);
            } else if (key.text == "gamma") {
                if (gamma) reject("game parameter gamma given twice");
                gamma = parse_number(tokens[1]);
            } else {
                fail("unknown game parameter '" + key.text + "'");
            }
        }
        if (!n || !a || !c) reject("game block needs n, a and c");
        try {
            game_.emplace(*n, *a, *c, gamma);
        } catch (const InvalidParameter& err) {
            reject(err.what());
        }
    }

    CharacteristicFunction parse_worths_block(const char* block) {
        std::optional<int> n;
        std::vector<std::pair<int, double>> by_size;
        std::vector<std::pair<Coalition::mask_type, double>> by_set;
        for (;;) {
            const std::vector<Token> tokens = next_block_line(block);
            if (is_closer(tokens)) break;
            const Token& key = tokens.front();
            if (key.kind != Token::Kind::Word) fail("expected a worth entry");
            if (key.text == "n") {
                if (tokens.size() != 2) fail("usage: n <count>");
                if (n) reject(std::string(block) + " parameter n given twice");
                n = parse_int(tokens[1]);
            } else if (key.text == "size") {
                // size <k> = <worth>
                if (tokens.size() != 4 || tokens[2].kind != Token::Kind::Equals) {
                    fail("usage: size <k> = <worth>");
                }
                by_size.emplace_back(parse_int(tokens[1]), parse_number(tokens[3]));
            } else if (key.text == "set") {
                // set {i, j, ...} = <worth>
                auto [mask, next] = parse_set(tokens, 1);
                if (next + 2 != tokens.size() || tokens[next].kind != Token::Kind::Equals) {
                    fail("usage: set {i, j, ...} = <worth>");
                }
                by_set.emplace_back(mask, parse_number(tokens[next + 1]));
            } else {
                fail("unknown " + std::string(block) + " entry '" + key.text + "'");
            }
        }

        if (!n) reject(std::string(block) + " block needs an explicit n");
        if (*n < 1 || *n > kMaxServices) {
            reject(std::string(block) + " needs n in 1.." + std::to_string(kMaxServices));
        }
        for (const auto& [size, worth] : by_size) {
            if (size < 1 || size > *n) {
                reject("size " + std::to_string(size) + " outside 1.." + std::to_string(*n));
            }
        }

        try {
            if (by_set.empty()) {
                std::vector<double> worths(static_cast<std::size_t>(*n));
                std::vector<bool> given(static_cast<std::size_t>(*n), false);
                for (const auto& [size, worth] : by_size) {
                    if (given[size - 1]) {
                        reject("size " + std::to_string(size) + " given twice");
                    }
                    given[size - 1] = true;
                    worths[size - 1] = worth;
                }
                for (int size = 1; size <= *n; ++size) {
                    if (!given[size - 1]) {
                        reject(std::string(block) + " block is missing size " +
                               std::to_string(size));
                    }
                }
                return CharacteristicFunction::size_symmetric(*n, worths);
            }

            // Mixed form: expand size entries into every coalition of that
            // size, then add the explicit sets. Overlaps are duplicates.
            std::vector<std::pair<Coalition, double>> entries;
            for (const auto& [size, worth] : by_size) {
                for (const Coalition& coalition : enumerate_coalitions(*n)) {
                    if (coalition.size() == size) entries.emplace_back(coalition, worth);
                }
            }
            for (const auto& [mask, worth] : by_set) {
                entries.emplace_back(Coalition(mask), worth);
            }
            return CharacteristicFunction::from_table(*n, entries);
        } catch (const ValidationError&) {
            throw;
        } catch (const Error& err) {
            reject(err.what());
        }
    }

    void parse_offer_block() {
        std::optional<Coalition::mask_type> mask;
        std::optional<double> worth;
        for (;;) {
            const std::vector<Token> tokens = next_block_line("offer");
            if (is_closer(tokens)) break;
            const Token& key = tokens.front();
            if (key.kind != Token::Kind::Word) fail("expected an offer entry");
            if (key.text == "set") {
                if (mask) reject("offer set given twice");
                auto [parsed, next] = parse_set(tokens, 1);
                if (next != tokens.size()) fail("unexpected tokens after the service set");
                mask = parsed;
            } else if (key.text == "worth") {
                if (tokens.size() != 2) fail("usage: worth <value>");
                if (worth) reject("offer worth given twice");
                worth = parse_number(tokens[1]);
            } else {
                fail("unknown offer entry '" + key.text + "'");
            }
        }
        if (!mask || !worth) reject("offer block needs a set and a worth");
        try {
            offers_.emplace_back(Coalition(*mask), *worth);
        } catch (const InvalidParameter& err) {
            reject(err.what());
        }
    }

    std::string_view origin_;
    std::vector<std::string_view> lines_;
    int line_no_ = 0;

    std::string name_;
    std::optional<CournotGame> game_;
    std::optional<CharacteristicFunction> worth_table_;
    std::vector<CompetitorOffer> offers_;
    std::optional<CharacteristicFunction> provider_estimates_;
};

void serialize_worths(std::ostream& out, const char* block,
                      const CharacteristicFunction& worth) {
    const int n = worth.service_count();
    out << block << " {\n  n " << n << '\n';
    if (worth.mode() == CharacteristicFunction::Mode::SizeSymmetric) {
        for (int size = 1; size <= n; ++size) {
            Coalition probe((Coalition::mask_type{1} << size) - 1);
            out << "  size " << size << " = " << exact(worth(probe)) << '\n';
        }
    } else {
        for (const Coalition& coalition : enumerate_coalitions(n)) {
            out << "  set " << to_string(coalition) << " = " << exact(worth(coalition)) << '\n';
        }
    }
    out << "}\n";
}

}  // namespace

int Scenario::service_count() const {
    if (game) return game->service_count();
    if (worth_table) return worth_table->service_count();
    throw ValidationError("scenario has neither a game nor a worth table");
}

void Scenario::validate() const {
    if (name.empty()) {
        throw ValidationError("scenario needs a name");
    }
    if (game && worth_table) {
        throw ValidationError("scenario defines both a game and a worth table; pick one");
    }
    if (!game && !worth_table) {
        throw ValidationError("scenario defines neither a game nor a worth table");
    }
    const int n = service_count();
    if (n > kMaxServices) {
        throw ValidationError("scenarios support at most " + std::to_string(kMaxServices) +
                              " services, got " + std::to_string(n));
    }
    for (const CompetitorOffer& offer : offers) {
        if (offer.coalition.highest_service() >= n) {
            throw ValidationError("offer on " + to_string(offer.coalition) +
                                  " references service index " +
                                  std::to_string(offer.coalition.highest_service()) +
                                  " but the scenario has " + std::to_string(n) +
                                  " services (valid indices 0.." + std::to_string(n - 1) + ")");
        }
    }
    if (provider_estimates) {
        if (provider_estimates->service_count() != n) {
            throw ValidationError("provider_worths cover " +
                                  std::to_string(provider_estimates->service_count()) +
                                  " services but the scenario has " + std::to_string(n));
        }
        if (game && game->differentiated()) {
            throw ValidationError(
                "provider_worths cannot be compared against a differentiated game; use an "
                "explicit worths block for the user side");
        }
    }
}

Scenario parse_scenario(std::string_view text, std::string_view origin) {
    return Parser(text, origin).run();
}

Scenario parse_scenario_file(const std::string& path) {
    std::ostringstream content;
    if (path == "-") {
        content << std::cin.rdbuf();
    } else {
        std::ifstream file(path);
        if (!file) {
            throw Error("cannot open scenario file '" + path + "'");
        }
        content << file.rdbuf();
    }
    return parse_scenario(content.str(), path == "-" ? "<stdin>" : path);
}

std::string serialize_scenario(const Scenario& scenario) {
    std::ostringstream out;
    out << "name " << scenario.name << '\n';
    if (scenario.game) {
        const CournotGame& game = *scenario.game;
        out << "game {\n";
        out << "  n " << game.service_count() << '\n';
        out << "  a " << exact(game.environment_size()) << '\n';
        out << "  c " << exact(game.unit_cost()) << '\n';
        if (game.differentiated()) {
            out << "  gamma " << exact(*game.differentiation()) << '\n';
        }
        out << "}\n";
    }
    if (scenario.worth_table) {
        serialize_worths(out, "worths", *scenario.worth_table);
    }
    for (const CompetitorOffer& offer : scenario.offers) {
        out << "offer {\n  set " << to_string(offer.coalition) << "\n  worth "
            << exact(offer.worth) << "\n}\n";
    }
    if (scenario.provider_estimates) {
        serialize_worths(out, "provider_worths", *scenario.provider_estimates);
    }
    return out.str();
}

}  // namespace resgame
