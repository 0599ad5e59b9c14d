#include "cavsim/network.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace cavsim {

namespace {

struct Token {
    std::string text;
    int column;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        if (line[i] == '#') break;
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
               line[i] != '#') {
            ++i;
        }
        tokens.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return tokens;
}

int parse_int(const Token& tok, int line_no) {
    int value = 0;
    const char* begin = tok.text.data();
    const char* end = begin + tok.text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        fail_at(ErrorCode::ParseError, "expected an integer, got '" + tok.text + "'",
                line_no, tok.column);
    }
    return value;
}

double parse_double(const Token& tok, int line_no) {
    try {
        std::size_t used = 0;
        const double value = std::stod(tok.text, &used);
        if (used != tok.text.size()) throw std::invalid_argument(tok.text);
        return value;
    } catch (const std::exception&) {
        fail_at(ErrorCode::ParseError, "expected a number, got '" + tok.text + "'",
                line_no, tok.column);
    }
}

void expect_count(const std::vector<Token>& tokens, std::size_t count, int line_no,
                  const std::string& usage) {
    if (tokens.size() != count) {
        fail_at(ErrorCode::ParseError, "expected '" + usage + "'", line_no,
                tokens.empty() ? 1 : tokens.back().column);
    }
}

void check_path(const NetworkProgram& program, int path, const char* what) {
    if (path < 0 || path >= program.n_paths) {
        fail(ErrorCode::ValidationError,
             std::string(what) + " references undeclared path " + std::to_string(path));
    }
}

}  // namespace

NetworkProgram parse_network(const std::string& text) {
    NetworkProgram program;
    bool saw_paths = false;

    std::istringstream stream(text);
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        const std::vector<Token> tokens = tokenize(line);
        if (tokens.empty()) continue;
        const std::string& cmd = tokens[0].text;

        if (cmd == "PATHS") {
            expect_count(tokens, 2, line_no, "PATHS <n>");
            if (saw_paths) {
                fail_at(ErrorCode::ParseError, "duplicate PATHS line", line_no, tokens[0].column);
            }
            program.n_paths = parse_int(tokens[1], line_no);
            saw_paths = true;
        } else if (cmd == "INJECT") {
            expect_count(tokens, 7, line_no, "INJECT photon <i> AT <path> STEP <k>");
            if (tokens[1].text != "photon" || tokens[3].text != "AT" || tokens[5].text != "STEP") {
                fail_at(ErrorCode::ParseError, "expected 'INJECT photon <i> AT <path> STEP <k>'",
                        line_no, tokens[1].column);
            }
            Injection inj;
            inj.photon_index = parse_int(tokens[2], line_no) - 1;
            inj.path = parse_int(tokens[4], line_no);
            inj.step = parse_int(tokens[6], line_no);
            program.injections.push_back(inj);
        } else if (cmd == "PBS") {
            expect_count(tokens, 4, line_no, "PBS <in> <transmit> <reflect>");
            program.elements.push_back(PbsElement{parse_int(tokens[1], line_no),
                                                  parse_int(tokens[2], line_no),
                                                  parse_int(tokens[3], line_no)});
        } else if (cmd == "HWP") {
            expect_count(tokens, 3, line_no, "HWP <path> <angle>");
            program.elements.push_back(
                HwpElement{parse_int(tokens[1], line_no), parse_double(tokens[2], line_no)});
        } else if (cmd == "NV") {
            expect_count(tokens, 5, line_no, "NV <path> <nv_index> <transmit> <reflect>");
            program.elements.push_back(NvElement{parse_int(tokens[1], line_no),
                                                 parse_int(tokens[2], line_no) - 1,
                                                 parse_int(tokens[3], line_no),
                                                 parse_int(tokens[4], line_no)});
        } else if (cmd == "HNV") {
            expect_count(tokens, 2, line_no, "HNV <nv_index>");
            program.elements.push_back(HadamardNvElement{parse_int(tokens[1], line_no) - 1});
        } else if (cmd == "MEASURE") {
            expect_count(tokens, 2, line_no, "MEASURE <nv_index>");
            program.elements.push_back(MeasureElement{parse_int(tokens[1], line_no) - 1});
        } else if (cmd == "MERGE") {
            if (tokens.size() < 3) {
                fail_at(ErrorCode::ParseError, "expected 'MERGE <destination> <source>...'",
                        line_no, tokens[0].column);
            }
            MergeElement merge;
            merge.destination = parse_int(tokens[1], line_no);
            for (std::size_t i = 2; i < tokens.size(); ++i) {
                merge.sources.push_back(parse_int(tokens[i], line_no));
            }
            program.elements.push_back(merge);
        } else {
            fail_at(ErrorCode::ParseError, "unknown command '" + cmd + "'", line_no,
                    tokens[0].column);
        }
    }

    if (!saw_paths && program.elements.empty() && program.injections.empty()) {
        fail_at(ErrorCode::ParseError, "empty network description", std::max(line_no, 1), 1);
    }
    if (!saw_paths) {
        fail_at(ErrorCode::ParseError, "missing PATHS declaration", 1, 1);
    }

    for (const Injection& inj : program.injections) {
        program.n_photons = std::max(program.n_photons, inj.photon_index + 1);
    }
    for (const Element& element : program.elements) {
        if (const auto* nv = std::get_if<NvElement>(&element)) {
            program.n_nvs = std::max(program.n_nvs, nv->nv_index + 1);
        } else if (const auto* h = std::get_if<HadamardNvElement>(&element)) {
            program.n_nvs = std::max(program.n_nvs, h->nv_index + 1);
        } else if (const auto* m = std::get_if<MeasureElement>(&element)) {
            program.n_nvs = std::max(program.n_nvs, m->nv_index + 1);
        }
    }

    std::sort(program.injections.begin(), program.injections.end(),
              [](const Injection& a, const Injection& b) {
                  return a.step != b.step ? a.step < b.step : a.photon_index < b.photon_index;
              });
    validate_program(program);
    return program;
}

void validate_program(const NetworkProgram& program) {
    if (program.n_paths <= 0) {
        fail(ErrorCode::ValidationError, "a network needs at least one path");
    }
    if (program.n_photons <= 0) {
        fail(ErrorCode::ValidationError, "a network needs at least one injected photon");
    }
    if (program.n_photons > kMaxPhotons || program.n_nvs > kMaxNvs) {
        fail(ErrorCode::ValidationError, "too many photons or NV registers");
    }

    std::vector<int> seen(program.n_photons, 0);
    for (const Injection& inj : program.injections) {
        check_path(program, inj.path, "INJECT");
        if (inj.photon_index < 0 || inj.photon_index >= program.n_photons) {
            fail(ErrorCode::ValidationError, "photon index out of range in INJECT");
        }
        if (inj.step < 0 || inj.step > static_cast<int>(program.elements.size())) {
            fail(ErrorCode::ValidationError, "INJECT step outside the element sequence");
        }
        seen[inj.photon_index] += 1;
    }
    for (int i = 0; i < program.n_photons; ++i) {
        if (seen[i] != 1) {
            fail(ErrorCode::ValidationError,
                 "photon " + std::to_string(i + 1) + " must be injected exactly once");
        }
    }

    auto check_nv_index = [&](int nv_index, const char* what) {
        if (nv_index < 0 || nv_index >= program.n_nvs) {
            fail(ErrorCode::ValidationError, std::string(what) + " NV index out of range");
        }
    };
    for (const Element& element : program.elements) {
        if (const auto* pbs = std::get_if<PbsElement>(&element)) {
            check_path(program, pbs->in_path, "PBS");
            check_path(program, pbs->transmit_path, "PBS");
            check_path(program, pbs->reflect_path, "PBS");
        } else if (const auto* hwp = std::get_if<HwpElement>(&element)) {
            check_path(program, hwp->path, "HWP");
            if (std::abs(hwp->angle_deg - 22.5) > 1e-9 && std::abs(hwp->angle_deg + 45.0) > 1e-9) {
                fail(ErrorCode::UnsupportedAngle,
                     "HWP angle must be 22.5 or -45 degrees");
            }
        } else if (const auto* nv = std::get_if<NvElement>(&element)) {
            check_path(program, nv->path, "NV");
            check_path(program, nv->transmit_path, "NV");
            check_path(program, nv->reflect_path, "NV");
            check_nv_index(nv->nv_index, "NV");
        } else if (const auto* h = std::get_if<HadamardNvElement>(&element)) {
            check_nv_index(h->nv_index, "HNV");
        } else if (const auto* m = std::get_if<MeasureElement>(&element)) {
            check_nv_index(m->nv_index, "MEASURE");
        } else if (const auto* merge = std::get_if<MergeElement>(&element)) {
            check_path(program, merge->destination, "MERGE");
            if (merge->sources.empty()) {
                fail(ErrorCode::ValidationError, "MERGE needs at least one source path");
            }
            for (int src : merge->sources) check_path(program, src, "MERGE");
        } else if (const auto* sz = std::get_if<SigmaZElement>(&element)) {
            if (sz->photon_index < 0 || sz->photon_index >= program.n_photons) {
                fail(ErrorCode::ValidationError, "SIGMAZ photon index out of range");
            }
        }
    }
}

NetworkRun run_program(const NetworkProgram& program, const std::vector<PhotonInput>& photons,
                       double p, bool record_trace) {
    validate_program(program);
    if (static_cast<int>(photons.size()) != program.n_photons) {
        fail(ErrorCode::InvalidArgument, "one amplitude pair required per injected photon");
    }

    StateVector state = photon_state(photons[0].a, photons[0].b);
    for (int i = 1; i < program.n_photons; ++i) {
        state = tensor(state, photon_state(photons[i].a, photons[i].b));
    }
    for (int j = 0; j < program.n_nvs; ++j) {
        state = tensor(state, nv_plus_superposition());
    }

    NetworkRun run;
    std::size_t next_injection = 0;
    auto inject_due = [&](int step) {
        while (next_injection < program.injections.size() &&
               program.injections[next_injection].step == step) {
            const Injection& inj = program.injections[next_injection];
            state = end_flight(state);
            state = inject(state, inj.photon_index, inj.path);
            ++next_injection;
        }
    };

    for (std::size_t k = 0; k < program.elements.size(); ++k) {
        inject_due(static_cast<int>(k));
        const Element& element = program.elements[k];
        if (const auto* pbs = std::get_if<PbsElement>(&element)) {
            state = apply_pbs(state, pbs->in_path, pbs->transmit_path, pbs->reflect_path);
        } else if (const auto* hwp = std::get_if<HwpElement>(&element)) {
            state = apply_hwp(state, hwp->path, hwp->angle_deg);
        } else if (const auto* nv = std::get_if<NvElement>(&element)) {
            state = apply_nv_interaction(state, nv->path, nv->nv_index, nv->transmit_path,
                                         nv->reflect_path, p);
        } else if (const auto* h = std::get_if<HadamardNvElement>(&element)) {
            state = apply_hadamard_nv(state, h->nv_index);
        } else if (const auto* m = std::get_if<MeasureElement>(&element)) {
            run.measured_nvs.push_back(m->nv_index);
        } else if (const auto* merge = std::get_if<MergeElement>(&element)) {
            state = apply_merge(state, merge->sources, merge->destination);
        } else if (const auto* sz = std::get_if<SigmaZElement>(&element)) {
            state = apply_sigma_z(state, sz->photon_index);
        }
        if (record_trace) run.trace.push_back(state);
    }
    inject_due(static_cast<int>(program.elements.size()));
    run.joint = end_flight(state);
    return run;
}

}
