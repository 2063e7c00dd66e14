/* subzero: subshifts, Wang tilings, and zero-temperature equilibrium states.
 *
 * C interface to the core library. All functions return sz_status; output
 * strings are heap-allocated and must be released with sz_string_free.
 * Handles are opaque and freed with their matching *_free function. Error
 * details for the calling thread are available via sz_last_error.
 */
#ifndef SUBZERO_H
#define SUBZERO_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sz_status {
    SZ_OK = 0,
    SZ_ERR_CONTRACT = 1,  /* violated precondition or domain error */
    SZ_ERR_PARSE = 2,     /* malformed input text */
    SZ_ERR_CAP = 3,       /* enumeration / state-space cap exceeded */
    SZ_ERR_PRECISION = 4, /* certified arithmetic could not decide */
    SZ_ERR_IO = 5
} sz_status;

const char* sz_last_error(void);
void sz_string_free(char* s);

/* ---- exact bounds ---- */

/* Certified enclosure of the binary entropy of the rational t ("p/q"). */
sz_status sz_binary_entropy(const char* t, int precision_bits, char** out);
/* Exact partial sum of binomial coefficients up to floor(alpha*n). */
sz_status sz_binom_partial_sum(uint64_t n, const char* alpha, char** out);
/* Sandwich report: lower=... sum=... upper=... holds=... */
sz_status sz_binom_bounds(uint64_t n, const char* alpha, char** out);

/* ---- schedules ---- */

typedef struct sz_schedule sz_schedule;
sz_status sz_schedule_parse(const char* text, sz_schedule** out);
sz_status sz_schedule_seed(sz_schedule** out);
sz_status sz_schedule_extend(sz_schedule* s, int levels);
sz_status sz_schedule_check(const sz_schedule* s, int k, char** out_report);
sz_status sz_schedule_print(const sz_schedule* s, char** out);
void sz_schedule_free(sz_schedule* s);

/* ---- patterns and admissible counting ---- */

/* forbidden_text uses the pattern file grammar ("alphabet ...", "pat ..."). */
sz_status sz_count_admissible(const char* forbidden_text, uint64_t length, uint64_t state_cap,
                              char** out_count);
/* shape "WxH"; lists one pattern per line. */
sz_status sz_enumerate_admissible(const char* forbidden_text, const char* shape, uint64_t cap,
                                  char** out_list);

/* Level counts of the frequency construction; parity is '+' or '-'. */
sz_status sz_freq_count(const sz_schedule* s, int level, char parity, uint64_t state_cap,
                        char** out_csv);
/* Chain reports; toy != 0 uses exact counts, otherwise closed-form bounds. */
sz_status sz_verify_51(const sz_schedule* s, int level, int power, int toy, uint64_t state_cap,
                       char** out_report);
/* base is "2", "e", or a rational; c >= 1 decimal. */
sz_status sz_verify_52(const sz_schedule* s, int level, int power, const char* base,
                       const char* c, uint64_t state_cap, char** out_report);

/* ---- Wang tilings ---- */

typedef struct sz_tileset sz_tileset;
sz_status sz_tileset_parse(const char* text, sz_tileset** out);
sz_status sz_tileset_coordinate(int n, sz_tileset** out);
sz_status sz_tileset_print(const sz_tileset* ts, char** out);
void sz_tileset_free(sz_tileset* ts);

/* region "WxH"; wrap "free" or "torus". Lists tilings row by row (top row
 * first) up to `limit`; the count line comes first. */
sz_status sz_tiles_solve(const sz_tileset* ts, const char* region, const char* wrap,
                         uint64_t limit, char** out);
sz_status sz_tiles_count(const sz_tileset* ts, const char* region, const char* wrap,
                         char** out_count);
/* Macro map text: "map <rho_id> : <n*n tau ids>" rows top-first. */
sz_status sz_tiles_verify_sim(const sz_tileset* rho, const sz_tileset* tau, int zoom,
                              const char* map_text, int torus_cap, char** out_report);
/* Converts a domino-presented forbidden set into a Wang tile set. */
sz_status sz_sft_to_wang(const char* forbidden_text, char** out_tileset);

/* ---- Turing machines ---- */

typedef struct sz_tm sz_tm;
sz_status sz_tm_parse(const char* text, sz_tm** out);
sz_status sz_tm_print(const sz_tm* tm, char** out);
void sz_tm_free(sz_tm* tm);

sz_status sz_tm_diagram(const sz_tm* tm, const char* input, int width, int steps, char** out);
sz_status sz_tm_compile(const sz_tm* tm, char** out_tileset);
/* Counts legal fillings above the fixed input row. */
sz_status sz_tm_fillings(const sz_tm* tm, const char* input, int width, int height,
                         char** out_count);
sz_status sz_tm_independence(const sz_tm* tm, int len_lo, int len_hi, int width, int height,
                             char** out_report);
/* One assembled hierarchy level; io strings are equal-length bit strings. */
sz_status sz_tm_macrotile(const sz_tm* checker, int n, const char* io_bottom, const char* io_left,
                          const char* io_top, const char* io_right, int budget,
                          char** out_report);

/* ---- equilibrium states ---- */

/* potential_text uses the potential file grammar; strip_height 1 = chain. */
sz_status sz_gibbs_pressure(const char* potential_text, double beta, int strip_height,
                            char** out_report);
/* families_text: "family plus"/"family minus" sections of pattern lines.
 * betas "a:b:step". Output is CSV. */
sz_status sz_gibbs_sweep(const char* potential_text, const char* families_text,
                         const char* betas, int threads, char** out_csv);
/* The union-potential oscillation demo over a toy schedule. */
sz_status sz_gibbs_oscillate(const sz_schedule* s, int levels, const char* betas, double tags,
                             int threads, char** out_csv);

/* ---- block recoding ---- */

sz_status sz_recode_check(const char* potential_text, double beta, int m, char** out_report);

#ifdef __cplusplus
}
#endif

#endif /* SUBZERO_H */
