import os
import json
import logging
from datetime import datetime

import pandas as pd

logger = logging.getLogger(__name__)


class ReportExporter:
    """교차 검증 / 환원 검증 보고서를 CSV, JSON으로 내보내는 클래스"""

    def __init__(self, export_dir="data/exports"):
        """
        ReportExporter 초기화

        Args:
            export_dir (str): 내보내기 파일 저장 디렉토리
        """
        self.export_dir = export_dir
        os.makedirs(export_dir, exist_ok=True)
        logger.info(f"ReportExporter 초기화 완료: {export_dir}")

    def _output_path(self, name, fmt, output_file):
        if output_file:
            directory = os.path.dirname(output_file)
            if directory:
                os.makedirs(directory, exist_ok=True)
            return output_file
        return os.path.join(self.export_dir, f"{name}.{fmt}")

    def export_report(self, rows, fmt="csv", name=None, output_file=None):
        """
        보고서 행 목록 내보내기

        Args:
            rows (list): dict 행 목록 (중첩 필드는 점 표기로 펼침)
            fmt (str): csv | json
            name (str, optional): 파일 이름 (확장자 제외)
            output_file (str, optional): 출력 파일 경로

        Returns:
            str: 내보낸 파일 경로 (실패 시 None)
        """
        if not rows:
            logger.warning("내보낼 보고서 행이 없습니다")
            return None
        if fmt not in ("csv", "json"):
            logger.error(f"지원하지 않는 형식: {fmt}")
            return None

        name = name or f"report_{datetime.now().strftime('%Y%m%d_%H%M%S')}"
        output_file = self._output_path(name, fmt, output_file)

        try:
            df = pd.json_normalize(rows)
            if fmt == "csv":
                df.to_csv(output_file, index=False, encoding='utf-8-sig')
            else:
                export_data = {
                    "export_info": {
                        "name": name,
                        "exported_at": datetime.now().isoformat(),
                        "total_rows": len(df)
                    },
                    "summary": self.summarize(rows),
                    "rows": json.loads(df.to_json(orient="records"))
                }
                with open(output_file, 'w', encoding='utf-8') as f:
                    json.dump(export_data, f, ensure_ascii=False, indent=2)

            logger.info(f"{fmt.upper()} 내보내기 완료: {output_file}, {len(df)}개 행")
            return output_file

        except Exception as e:
            logger.error(f"{fmt.upper()} 내보내기 실패: {e}")
            return None

    def summarize(self, rows):
        """
        보고서 요약 (통과/실패 수, 편차 최댓값)

        Args:
            rows (list): 보고서 행 목록

        Returns:
            dict: 요약 통계
        """
        df = pd.json_normalize(rows)
        summary = {"total": int(len(df))}
        if "passed" in df.columns:
            summary["passed"] = int(df["passed"].sum())
            summary["failed"] = int((~df["passed"].astype(bool)).sum())
        for column in ("abs_deviation", "rel_deviation"):
            if column in df.columns:
                summary[f"max_{column}"] = float(df[column].max())
        return summary
