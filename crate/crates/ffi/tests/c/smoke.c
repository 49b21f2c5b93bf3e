#include <math.h>
#include <stdio.h>
#include <string.h>

#include "cubical.h"

static const char *CUB4 =
    "states S T P Q\n"
    "token tau: S>T, P>Q\n"
    "token tau~: T>S, Q>P\n"
    "token mu: T>Q\n"
    "token mu~: Q>T\n"
    "theta tau=0.1 tau~=0.2 mu=0.3 mu~=0.4\n";

#define EXPECT(cond)                                              \
    do {                                                          \
        if (!(cond)) {                                            \
            fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
            return 1;                                             \
        }                                                         \
    } while (0)

int main(void) {
    CtsSystem *sys = NULL;
    EXPECT(cts_system_parse(CUB4, &sys) == CTS_STATUS_OK);

    CtsKind kind;
    EXPECT(cts_system_classify(sys, &kind) == CTS_STATUS_OK);
    EXPECT(kind == CTS_KIND_CUBICAL_NOT_MEDIUM);

    bool holds = true;
    char *witness = NULL;
    EXPECT(cts_system_check_axiom(sys, CTS_AXIOM_MA, &holds, &witness) == CTS_STATUS_OK);
    EXPECT(!holds);
    printf("%s\n", witness);
    cts_string_free(witness);

    char *content = NULL;
    EXPECT(cts_system_state_content(sys, 2, &content) == CTS_STATUS_OK);
    EXPECT(strcmp(content, "{ tau~, mu }") == 0);
    cts_string_free(content);

    CtsChain *chain = NULL;
    EXPECT(cts_chain_new(sys, NULL, 0, NULL, 0, &chain) == CTS_STATUS_OK);
    double pi[4];
    EXPECT(cts_chain_stationary(chain, pi, 4) == CTS_STATUS_OK);
    EXPECT(fabs(pi[0] - 8.0 / 21.0) < 1e-12);
    EXPECT(cts_chain_stationary(chain, pi, 3) == CTS_STATUS_BUFFER_TOO_SMALL);

    uint64_t counts[4];
    EXPECT(cts_chain_simulate(chain, 42, 1000, counts, 4) == CTS_STATUS_OK);
    EXPECT(counts[0] + counts[1] + counts[2] + counts[3] == 1001);
    cts_chain_free(chain);
    cts_system_free(sys);

    CtsSystem *bad = NULL;
    EXPECT(cts_system_parse("token t: A>B\n", &bad) == CTS_STATUS_PARSE_ERROR);
    EXPECT(bad == NULL);
    EXPECT(strlen(cts_last_error()) > 0);
    printf("%s\n", cts_last_error());
    return 0;
}
