#include <stdio.h>
#include <string.h>

#include "fibquasi.h"

#define CHECK(cond)                                                   \
    do {                                                              \
        if (!(cond)) {                                                \
            fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
            return 1;                                                 \
        }                                                             \
    } while (0)

int main(void) {
    FqWord *f5 = NULL;
    CHECK(fq_fib_word(5, &f5) == FQ_STATUS_OK);
    char *s = fq_word_to_string(f5);
    CHECK(strcmp(s, "abaababa") == 0);
    fq_string_free(s);

    FqWordSet *covers = NULL;
    CHECK(fq_analyze(f5, FQ_CATEGORY_COVERS, false, &covers) == FQ_STATUS_OK);
    char *json = fq_wordset_to_json(covers);
    CHECK(strcmp(json, "[\"aba\",\"abaababa\"]") == 0);
    fq_string_free(json);
    fq_wordset_free(covers);

    FqWord *bad = NULL;
    CHECK(fq_word_parse("abc", &bad) == FQ_STATUS_INVALID_LETTER);
    CHECK(bad == NULL);
    CHECK(strlen(fq_last_error_message()) > 0);

    size_t count = 0;
    size_t buf[8];
    CHECK(fq_fib_occurrences(6, 3, buf, 8, &count) == FQ_STATUS_OK);
    CHECK(count == 4 && buf[0] == 1 && buf[1] == 4 && buf[2] == 6 && buf[3] == 9);

    fq_word_free(f5);
    printf("ok\n");
    return 0;
}
