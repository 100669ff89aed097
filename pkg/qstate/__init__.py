# qstate — Álgebra linear densa e contabilidade de estados multipartites
